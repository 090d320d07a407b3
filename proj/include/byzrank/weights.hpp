// Copyright 2026 The byzrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BYZRANK_WEIGHTS_HPP_
#define BYZRANK_WEIGHTS_HPP_

#include <cstdint>
#include <vector>

namespace byzrank {

// Positive per-object scores. A voter prefers i over j with probability
// w_i / (w_i + w_j); rankings derive from descending weight.
struct WeightVector {
  std::vector<double> w;
  bool normalized = false;

  int size() const { return static_cast<int>(w.size()); }
  double operator[](int i) const { return w[static_cast<std::size_t>(i)]; }
  double sum() const;
  // Dynamic range max_i w_i / min_j w_j; entries must be positive.
  double skew() const;
  void normalize();  // scale to sum 1; rejects non-positive entries
};

WeightVector make_weights(std::vector<double> values, bool normalize = false);

// i.i.d. uniform on [lo, hi], then normalized. Requires 0 < lo <= hi.
WeightVector sample_uniform_weights(int n, double lo, double hi, std::uint64_t seed);

// Two-block vector with skew exactly b: the first floor(n/2) entries get
// 1/(n + (b-1)*ceil(n/2)), the rest b times that, so the sum is exactly 1.
WeightVector make_skewed_weights(int n, double b);

// Mirror image: heavy block first. Same denominator, same skew.
WeightVector make_mirrored_skewed_weights(int n, double b);

}  // namespace byzrank

#endif  // BYZRANK_WEIGHTS_HPP_
