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

#include "byzrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "byzrank/errors.hpp"

namespace byzrank {

double rel_l2(const std::vector<double>& estimate, const std::vector<double>& truth) {
  if (estimate.size() != truth.size()) {
    throw ParameterError("rel_l2: length mismatch (" + std::to_string(estimate.size()) +
                         " vs " + std::to_string(truth.size()) + ")");
  }
  double diff_sq = 0.0;
  double truth_sq = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    diff_sq += d * d;
    truth_sq += truth[i] * truth[i];
  }
  if (truth_sq == 0.0) throw ParameterError("rel_l2: zero ground-truth vector");
  return std::sqrt(diff_sq) / std::sqrt(truth_sq);
}

std::vector<int> ranking_from_scores(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](int a, int b) {
    return scores[static_cast<std::size_t>(a)] > scores[static_cast<std::size_t>(b)];
  });
  return order;
}

namespace {

// Inversions in seq, counted by merge sort. seq is clobbered.
std::int64_t count_inversions(std::vector<int>& seq, std::vector<int>& scratch, std::size_t lo,
                              std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inPairs = count_inversions(seq, scratch, lo, mid) +
                         count_inversions(seq, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (seq[a] <= seq[b]) {
      scratch[out++] = seq[a++];
    } else {
      inPairs += static_cast<std::int64_t>(mid - a);
      scratch[out++] = seq[b++];
    }
  }
  while (a < mid) scratch[out++] = seq[a++];
  while (b < hi) scratch[out++] = seq[b++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            seq.begin() + static_cast<std::ptrdiff_t>(lo));
  return inPairs;
}

}  // namespace

double kendall_tau(const std::vector<int>& ranking_a, const std::vector<int>& ranking_b) {
  const std::size_t n = ranking_a.size();
  if (ranking_b.size() != n) {
    throw ParameterError("kendall_tau: rankings have different lengths");
  }
  // Both must be permutations of 0..n-1.
  std::vector<int> pos_b(n, -1);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const int obj = ranking_b[idx];
    if (obj < 0 || static_cast<std::size_t>(obj) >= n || pos_b[static_cast<std::size_t>(obj)] != -1) {
      throw ParameterError("kendall_tau: second ranking is not a permutation of 0.." +
                           std::to_string(n - 1));
    }
    pos_b[static_cast<std::size_t>(obj)] = static_cast<int>(idx);
  }
  std::vector<int> seq(n);
  std::vector<char> seen(n, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const int obj = ranking_a[idx];
    if (obj < 0 || static_cast<std::size_t>(obj) >= n || seen[static_cast<std::size_t>(obj)]) {
      throw ParameterError("kendall_tau: first ranking is not a permutation of 0.." +
                           std::to_string(n - 1));
    }
    seen[static_cast<std::size_t>(obj)] = 1;
    seq[idx] = pos_b[static_cast<std::size_t>(obj)];
  }
  if (n < 2) return 1.0;
  std::vector<int> scratch(n);
  const std::int64_t discordant = count_inversions(seq, scratch, 0, n);
  const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return 1.0 - 2.0 * static_cast<double>(discordant) / total;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("pearson_correlation needs >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ParameterError("pearson_correlation: zero variance input");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace byzrank
