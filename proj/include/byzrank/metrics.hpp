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

#ifndef BYZRANK_METRICS_HPP_
#define BYZRANK_METRICS_HPP_

#include <vector>

namespace byzrank {

// ||estimate - truth||_2 / ||truth||_2. Lengths must match; truth nonzero.
double rel_l2(const std::vector<double>& estimate, const std::vector<double>& truth);

// Object ids sorted by score descending; exact ties broken by smaller index.
std::vector<int> ranking_from_scores(const std::vector<double>& scores);

// Tau-a on two strict rankings (permutations of 0..n-1):
// (concordant - discordant) / C(n,2), via merge-sort inversion counting.
// n < 2 has no pairs and returns 1.
double kendall_tau(const std::vector<int>& ranking_a, const std::vector<int>& ranking_b);

// Sample correlation of paired observations; needs >= 2 points and nonzero
// variance on both sides.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace byzrank

#endif  // BYZRANK_METRICS_HPP_
