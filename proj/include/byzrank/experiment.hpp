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

#ifndef BYZRANK_EXPERIMENT_HPP_
#define BYZRANK_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "byzrank/filter.hpp"
#include "byzrank/ranking_data.hpp"
#include "byzrank/spectral.hpp"

namespace byzrank {

struct ExperimentConfig {
  int n = 200;
  int k = 100;
  // Defaults to k so every unit sees the whole population and the Byzantine
  // count per unit is exactly round(bf * k). A larger population makes the
  // per-unit count hypergeometric; its upper tail can push a unit past the
  // 1/2 local-majority boundary, where the filter legitimately degenerates.
  int total_voters = 100;
  std::vector<double> bf_grid = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::vector<int> n_grid = {50, 90, 130, 170, 210, 250};
  // Explicit edge probability; negative means p = p_log_coeff * ln(n) / n,
  // clamped to 1 (the formula exceeds 1 for small n).
  double p = -1.0;
  double p_log_coeff = 20.0;
  std::string weights = "uniform";  // uniform | skewed
  double weight_lo = 1.0;
  double weight_hi = 100.0;
  double skew_b = 10.0;
  std::vector<std::string> strategies = {"fixed_order", "opposite", "opposite_probabilistic",
                                         "random_subset"};
  std::vector<std::string> algorithms = {"rc", "fbsr"};
  int orf_swaps = 2;
  int trials = 10;
  std::uint64_t seed = 1;
  FilterParams filter;
  StationaryOptions spectral;
  int threads = 0;          // 0 picks the hardware count
  int graph_attempts = 100; // connectivity resample budget per trial
};

struct TrialResult {
  std::string strategy;
  std::string algo;
  double bf = 0.0;
  int n = 0;
  int k = 0;
  int trial = 0;
  std::uint64_t trial_seed = 0;
  double rel_l2 = 0.0;
  double kendall = 0.0;
  int graph_resamples = 0;
};

struct CellAggregate {
  std::string strategy;
  std::string algo;
  double bf = 0.0;
  int n = 0;
  int k = 0;
  int trials = 0;
  double mean_rel_l2 = 0.0;
  double std_rel_l2 = 0.0;
  double mean_kendall = 0.0;
  double std_kendall = 0.0;
};

// Raw rows in deterministic sweep order plus per-cell aggregates (mean and
// sample std, ddof 1, zero when a cell has a single trial).
struct ResultTable {
  std::vector<TrialResult> rows;
  std::vector<CellAggregate> aggregates;

  // Header, then raw rows (stat=raw), then aggregate rows (stat=mean and
  // stat=std sharing the metric columns). Metrics print as %.17g so rereads
  // round-trip exactly; identical runs serialize to identical bytes.
  void write_csv(std::ostream& os) const;
};

// Recomputes aggregates from rows, grouped by (strategy, algo, bf, n, k) in
// first-appearance order.
void compute_aggregates(ResultTable& table);

// (strategy x byzantine fraction) grid at fixed n, k: the main synthetic
// comparison. Within a trial, every algorithm sees the same graph, weights,
// and vote streams.
ResultTable run_synthetic_sweep(const ExperimentConfig& cfg);

// (strategy x bf x n) grid with k = n per cell.
ResultTable run_scaling_sweep(const ExperimentConfig& cfg);

// Permutation-corpus runs: ground truth is the spectral result on the
// uncorrupted data; Byzantine voters substitute whole rankings. Algorithms
// are rc and bsr; strategies must be permutation-valued (fixed_order,
// opposite, opposite_random_flips). The Byzantine subset is fixed per cell
// (not per trial), so deterministic strategies repeat exactly across trials.
ResultTable run_ranking_dataset(const RankingDataset& data, const ExperimentConfig& cfg);

// Skewed-weight opposite-vote run, rc only: the baseline's failure mode.
ResultTable run_failure_demo(const ExperimentConfig& cfg);

// Pearson correlation between the bf grid and the rc mean rel_l2 aggregates.
double failure_growth_correlation(const ResultTable& table);

struct IndistinguishabilityReport {
  int n = 0;
  double b = 0.0;
  int total_voters = 0;
  int k = 0;
  std::uint64_t seed = 0;
  bool identical = false;
  int units_compared = 0;
  std::size_t votes_compared = 0;
  double bound = 0.0;         // (b - 1) / (2 b)
  double error_vs_straight = 0.0;  // shared estimate scored against each truth
  double error_vs_mirrored = 0.0;
};

// Builds the two adversarial instances that swap the good and Byzantine
// roles between a skewed weight vector and its mirror image, casts votes
// with shared per-(voter, pair) streams, and compares the ledgers byte for
// byte. Identical ledgers mean no algorithm can tell the instances apart,
// so every algorithm's error on one of them is at least the printed bound.
IndistinguishabilityReport run_indistinguishability_demo(int n, double b, int total_voters,
                                                         int k, std::uint64_t seed);
void write_report(const IndistinguishabilityReport& report, std::ostream& os);

// Plot-ready wide table from the aggregates: x column (bf or n), then one
// mean and std column per (strategy, algo) series.
void write_plot_data(const ResultTable& table, std::ostream& os, const std::string& x_field);

// Dependency-free SVG line plot of the mean rel_l2 aggregates with std
// error bars.
void write_svg_plot(const ResultTable& table, std::ostream& os, const std::string& x_field,
                    const std::string& title);

}  // namespace byzrank

#endif  // BYZRANK_EXPERIMENT_HPP_
