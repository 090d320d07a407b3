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

#include "byzrank/weights.hpp"

#include <algorithm>
#include <string>

#include "byzrank/errors.hpp"
#include "byzrank/rng.hpp"

namespace byzrank {

double WeightVector::sum() const {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

double WeightVector::skew() const {
  if (w.empty()) throw ParameterError("skew of an empty weight vector");
  const auto [mn, mx] = std::minmax_element(w.begin(), w.end());
  if (*mn <= 0.0) throw ParameterError("skew undefined: non-positive weight present");
  return *mx / *mn;
}

void WeightVector::normalize() {
  double s = 0.0;
  for (double v : w) {
    if (v <= 0.0) throw ParameterError("weights must be strictly positive");
    s += v;
  }
  if (w.empty()) throw ParameterError("cannot normalize an empty weight vector");
  for (double& v : w) v /= s;
  normalized = true;
}

WeightVector make_weights(std::vector<double> values, bool normalize) {
  WeightVector wv;
  wv.w = std::move(values);
  for (double v : wv.w) {
    if (v <= 0.0) throw ParameterError("weights must be strictly positive");
  }
  if (normalize) wv.normalize();
  return wv;
}

WeightVector sample_uniform_weights(int n, double lo, double hi, std::uint64_t seed) {
  if (n < 1) throw ParameterError("need n >= 1 weights");
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw ParameterError("uniform weight bounds need 0 < lo <= hi, got [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  SeedStream stream(seed);
  WeightVector wv;
  wv.w.resize(static_cast<std::size_t>(n));
  for (double& v : wv.w) v = stream.next_in(lo, hi);
  wv.normalize();
  return wv;
}

WeightVector make_skewed_weights(int n, double b) {
  if (n < 2) throw ParameterError("skewed weights need n >= 2");
  if (!(b > 1.0)) throw ParameterError("skewed weights need b > 1, got " + std::to_string(b));
  const int low_count = n / 2;  // floor
  const int high_count = n - low_count;  // ceil
  const double denom = n + (b - 1.0) * high_count;
  WeightVector wv;
  wv.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    wv.w[static_cast<std::size_t>(i)] = (i < low_count ? 1.0 : b) / denom;
  }
  wv.normalized = true;
  return wv;
}

WeightVector make_mirrored_skewed_weights(int n, double b) {
  if (n < 2) throw ParameterError("skewed weights need n >= 2");
  if (!(b > 1.0)) throw ParameterError("skewed weights need b > 1, got " + std::to_string(b));
  const int high_count = (n + 1) / 2;  // ceil, leading block
  const double denom = n + (b - 1.0) * high_count;
  WeightVector wv;
  wv.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    wv.w[static_cast<std::size_t>(i)] = (i < high_count ? b : 1.0) / denom;
  }
  wv.normalized = true;
  return wv;
}

}  // namespace byzrank
