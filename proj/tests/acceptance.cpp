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

// End-to-end gate: every release-blocking behavior checked at full desk
// scale, one verdict line each. Tolerances are pinned here on purpose; they
// are the contract, not tuning knobs. Usage: acceptance <ranking-corpus>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "byzrank/errors.hpp"
#include "byzrank/experiment.hpp"
#include "byzrank/filter.hpp"
#include "byzrank/graph.hpp"
#include "byzrank/metrics.hpp"
#include "byzrank/ranking_data.hpp"
#include "byzrank/rng.hpp"
#include "byzrank/spectral.hpp"
#include "byzrank/voting.hpp"
#include "byzrank/weights.hpp"
#include "oracles.hpp"

using namespace byzrank;

namespace {

int failures = 0;

void verdict(bool ok, const std::string& label, const std::string& detail) {
  std::printf("[%s] %-4s %s\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const CellAggregate& cell(const ResultTable& table, const std::string& strategy,
                          const std::string& algo, double bf) {
  for (const CellAggregate& a : table.aggregates) {
    if (a.strategy == strategy && a.algo == algo && a.bf == bf) return a;
  }
  throw std::runtime_error("missing aggregate " + strategy + "/" + algo + " bf=" + fmt(bf));
}

// pi^T P against pi itself, infinity norm, walking the CSR storage.
double fixed_point_residual(const TransitionMatrix& P, const std::vector<double>& pi) {
  std::vector<double> out(pi.size(), 0.0);
  for (int i = 0; i < P.n; ++i) {
    out[static_cast<std::size_t>(i)] += pi[static_cast<std::size_t>(i)] * P.diag[static_cast<std::size_t>(i)];
    for (int e = P.row_ptr[static_cast<std::size_t>(i)]; e < P.row_ptr[static_cast<std::size_t>(i) + 1]; ++e) {
      out[static_cast<std::size_t>(P.col[static_cast<std::size_t>(e)])] +=
          pi[static_cast<std::size_t>(i)] * P.off_diag[static_cast<std::size_t>(e)];
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) worst = std::max(worst, std::abs(out[i] - pi[i]));
  return worst;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

ComparisonGraph connected_er(int n, double p, std::uint64_t seed_base) {
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    ComparisonGraph g = generate_er_graph(n, p, derive_seed(seed_base, attempt));
    if (is_connected(g)) return g;
  }
  throw std::runtime_error("no connected graph found");
}

// Shared synthetic configuration (n=200, k=100, 1000 voters, log-density
// graphs, uniform weights, 10 trials).
ExperimentConfig desk_config() {
  ExperimentConfig cfg;
  cfg.seed = 1;
  return cfg;
}

void c1_fixed_point() {
  const auto start = std::chrono::steady_clock::now();
  const int n = 50;
  const ComparisonGraph g = connected_er(n, 0.5, 101);
  const WeightVector w = sample_uniform_weights(n, 1.0, 100.0, 102);
  const TransitionMatrix P = build_transition(exact_aggregates(w, g), g);
  const double residual = fixed_point_residual(P, w.w);
  const StationaryResult st = stationary(P, {});
  const double gap = linf(st.pi, w.w);
  const double elapsed = seconds_since(start);
  verdict(residual <= 1e-12 && gap <= 1e-8 && elapsed < 1.0, "C1",
          "exact-probability fixed point: residual " + fmt(residual) + " (<=1e-12), power-iteration gap " +
              fmt(gap) + " (<=1e-8), " + fmt(elapsed) + "s (<1s)");
}

void c2_eigen_oracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  SeedStream stream(202);
  for (int round = 0; round < 100; ++round) {
    const int n = 3 + static_cast<int>(stream.next_below(6));  // 3..8
    ComparisonGraph g = generate_er_graph(n, 0.6, stream.next_u64());
    while (!is_connected(g)) g = generate_er_graph(n, 0.6, stream.next_u64());

    PairAggregates agg;
    agg.n = n;
    agg.frac.assign(static_cast<std::size_t>(n) * n, 0.0);
    agg.count.assign(static_cast<std::size_t>(n) * n, 0);
    for (const auto& [i, j] : g.edges) {
      // independent directions on purpose: the chain need not be reversible
      agg.frac[static_cast<std::size_t>(i) * n + j] = stream.next_in(0.05, 0.95);
      agg.frac[static_cast<std::size_t>(j) * n + i] = stream.next_in(0.05, 0.95);
      agg.count[static_cast<std::size_t>(i) * n + j] = 1;
      agg.count[static_cast<std::size_t>(j) * n + i] = 1;
    }
    const TransitionMatrix P = build_transition(agg, g);

    std::vector<std::vector<double>> dense(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
      dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = P.diag[static_cast<std::size_t>(i)];
      for (int e = P.row_ptr[static_cast<std::size_t>(i)]; e < P.row_ptr[static_cast<std::size_t>(i) + 1]; ++e) {
        dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(P.col[static_cast<std::size_t>(e)])] =
            P.off_diag[static_cast<std::size_t>(e)];
      }
    }
    // arbitrary chains can mix slowly; give the oracle check a generous budget
    StationaryOptions opts;
    opts.tol = 1e-13;
    opts.max_iters = 2000000;
    worst = std::max(worst, linf(stationary(P, opts).pi, oracles::left_stationary_dense(dense)));
  }
  const double elapsed = seconds_since(start);
  verdict(worst <= 1e-8 && elapsed < 5.0, "C2",
          "power iteration vs dense eigen solve, 100 graphs n<=8: worst gap " + fmt(worst) +
              " (<=1e-8), " + fmt(elapsed) + "s (<5s)");
}

ResultTable opposite_sweep() {
  ExperimentConfig cfg = desk_config();
  cfg.strategies = {"opposite"};
  cfg.bf_grid = {0.0, 0.3};
  return run_synthetic_sweep(cfg);
}

void c3_clean_baseline(const ResultTable& table) {
  const double rc = cell(table, "opposite", "rc", 0.0).mean_rel_l2;
  const double fbsr = cell(table, "opposite", "fbsr", 0.0).mean_rel_l2;
  const bool ok = rc >= 0.01 && rc <= 0.04 && fbsr >= 0.01 && fbsr <= 0.04;
  verdict(ok, "C3", "clean baseline (no byzantine voters): rc " + fmt(rc) + ", filtered " + fmt(fbsr) +
                        " (both in [0.01,0.04])");
}

void c4_rc_failure(const ResultTable& table) {
  const double rc = cell(table, "opposite", "rc", 0.3).mean_rel_l2;
  verdict(rc >= 0.40 && rc <= 0.52, "C4",
          "opposite voters, 30%: baseline rel_l2 " + fmt(rc) + " (in [0.40,0.52])");
}

void c5_fbsr_robust(const ResultTable& table) {
  const double fbsr = cell(table, "opposite", "fbsr", 0.3).mean_rel_l2;
  verdict(fbsr <= 0.12, "C5",
          "opposite voters, 30%: filtered rel_l2 " + fmt(fbsr) + " (<=0.12)");
}

void c6_ranking_quality(const ResultTable& table) {
  const double rc_tau = cell(table, "opposite", "rc", 0.3).mean_kendall;
  const double fbsr_tau = cell(table, "opposite", "fbsr", 0.3).mean_kendall;
  verdict(rc_tau <= 0.45 && fbsr_tau >= 0.90, "C6",
          "opposite voters, 30%: kendall tau rc " + fmt(rc_tau) + " (<=0.45), filtered " +
              fmt(fbsr_tau) + " (>=0.90)");
}

void c7_scaling_trend() {
  ExperimentConfig cfg = desk_config();
  cfg.strategies = {"fixed_order"};
  cfg.bf_grid = {0.1};
  const ResultTable table = run_scaling_sweep(cfg);

  bool rc_flat = true;
  bool fbsr_below = true;
  std::string rc_values;
  for (int n : cfg.n_grid) {
    bool found = false;
    double rc = 0.0;
    double fbsr = 0.0;
    for (const CellAggregate& a : table.aggregates) {
      if (a.n != n) continue;
      if (a.algo == "rc") rc = a.mean_rel_l2;
      if (a.algo == "fbsr") fbsr = a.mean_rel_l2;
      found = true;
    }
    if (!found) rc_flat = false;
    rc_flat = rc_flat && rc >= 0.11 && rc <= 0.17;
    fbsr_below = fbsr_below && fbsr <= rc;
    if (!rc_values.empty()) rc_values += " ";
    rc_values += fmt(rc);
  }
  const double fbsr_first = cell(table, "fixed_order", "fbsr", 0.1).mean_rel_l2;  // n_grid[0]
  double fbsr_last = 0.0;
  for (const CellAggregate& a : table.aggregates) {
    if (a.algo == "fbsr" && a.n == cfg.n_grid.back()) fbsr_last = a.mean_rel_l2;
  }
  verdict(rc_flat && fbsr_below && fbsr_last <= fbsr_first, "C7",
          "fixed-order 10% with k=n: rc stays in [0.11,0.17] {" + rc_values +
              "}, filtered <= rc everywhere, filtered at n=250 (" + fmt(fbsr_last) +
              ") <= at n=50 (" + fmt(fbsr_first) + ")");
}

void c8_failure_demo() {
  ExperimentConfig cfg = desk_config();
  cfg.skew_b = 10.0;
  const ResultTable table = run_failure_demo(cfg);
  const double at_zero = cell(table, "opposite", "rc", 0.0).mean_rel_l2;
  const double at_high = cell(table, "opposite", "rc", 0.3).mean_rel_l2;
  const double r = failure_growth_correlation(table);
  verdict(at_high >= 0.2 && at_zero <= 0.03 && r >= 0.9, "C8",
          "skewed-weight failure: rel_l2 " + fmt(at_zero) + " at 0% (<=0.03), " + fmt(at_high) +
              " at 30% (>=0.2), growth correlation " + fmt(r) + " (>=0.9)");
}

void c9_good_voter_retention() {
  ExperimentConfig cfg = desk_config();
  long long units = 0;
  long long retained = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, hash_label("retention"), trial);
    const double p = std::min(1.0, cfg.p_log_coeff * std::log(cfg.n) / cfg.n);
    const ComparisonGraph g = connected_er(cfg.n, p, derive_seed(base, 1));
    const WeightVector w = sample_uniform_weights(cfg.n, cfg.weight_lo, cfg.weight_hi,
                                                  derive_seed(base, 2));
    const VoterPopulation pop(cfg.total_voters, 0, nullptr, derive_seed(base, 3));
    const RankingOutcome outcome =
        fbsr_rank(g, w, pop, cfg.k, cfg.filter, cfg.spectral, derive_seed(base, 4));
    for (const UnitFilterStats& s : outcome.report.units) {
      ++units;
      // at least 5/6 of the assigned voters survive
      if (6 * (s.assigned - s.removed) >= 5 * s.assigned) ++retained;
    }
  }
  const double frac = static_cast<double>(retained) / static_cast<double>(units);
  verdict(frac >= 0.99, "C9",
          "all-good retention over 10 trials: >=5/6 survive in " + fmt(100.0 * frac) + "% of " +
              std::to_string(units) + " units (>=99%)");
}

void c10_indistinguishability() {
  const auto start = std::chrono::steady_clock::now();
  bool all_identical = true;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 4 + static_cast<int>((seed - 1) % 17);  // 4..20
    const IndistinguishabilityReport report =
        run_indistinguishability_demo(n, 5.0, 40, 10, seed);
    all_identical = all_identical && report.identical;
  }
  const double elapsed = seconds_since(start);
  verdict(all_identical && elapsed < 5.0, "C10",
          std::string("role-swapped instances, 20 seeds, n=4..20: ledgers ") +
              (all_identical ? "bit-identical" : "DIFFER") + ", " + fmt(elapsed) + "s (<5s)");
}

void c11_kendall_oracle() {
  SeedStream stream(1111);
  bool exact = true;
  for (int round = 0; round < 100; ++round) {
    const int n = 2 + static_cast<int>(stream.next_below(199));  // 2..200
    const std::vector<int> a = random_permutation(n, stream);
    const std::vector<int> b = random_permutation(n, stream);
    if (kendall_tau(a, b) != oracles::kendall_tau_quadratic(a, b)) exact = false;
  }
  verdict(exact, "C11", "merge-sort kendall tau == quadratic pair count on 100 pairs, n<=200, exactly");
}

void c12_corpus_ordering(const std::string& corpus_path) {
  const RankingDataset data = load_rankings(corpus_path, false);
  ExperimentConfig cfg;
  cfg.seed = 1;
  cfg.strategies = {"opposite_random_flips"};
  cfg.algorithms = {"rc", "bsr"};
  cfg.bf_grid = {0.2};
  cfg.trials = 10;
  cfg.filter.empirical_max_out = false;  // real-data preset

  const ResultTable table = run_ranking_dataset(data, cfg);
  int wins = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const TrialResult& rc = table.rows[static_cast<std::size_t>(trial) * 2];
    const TrialResult& bsr = table.rows[static_cast<std::size_t>(trial) * 2 + 1];
    if (bsr.rel_l2 <= rc.rel_l2) ++wins;
  }
  verdict(wins >= 9, "C12",
          "bundled corpus, random-flip voters at 20%: filtered <= baseline in " +
              std::to_string(wins) + "/10 trials (>=9)");
}

void c13_determinism() {
  ExperimentConfig cfg = desk_config();
  cfg.n = 60;
  cfg.k = 40;
  cfg.total_voters = 200;
  cfg.bf_grid = {0.0, 0.2};
  cfg.strategies = {"random_subset"};
  cfg.trials = 4;
  std::ostringstream first;
  std::ostringstream second;
  run_synthetic_sweep(cfg).write_csv(first);
  run_synthetic_sweep(cfg).write_csv(second);
  verdict(first.str() == second.str() && !first.str().empty(), "C13",
          "identical config and seed: csv reruns byte-identical (" +
              std::to_string(first.str().size()) + " bytes)");
}

void operating_example() {
  ExperimentConfig cfg = desk_config();
  cfg.strategies = {"fixed_order"};
  cfg.algorithms = {"rc"};
  cfg.bf_grid = {0.2};
  const ResultTable table = run_synthetic_sweep(cfg);
  const double rc = cell(table, "fixed_order", "rc", 0.2).mean_rel_l2;
  verdict(rc >= 0.24 && rc <= 0.30, "OP",
          "fixed-order 20% baseline operating point: rel_l2 " + fmt(rc) + " (0.27 +- 0.03)");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <ranking-corpus-path>\n");
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    c1_fixed_point();
    c2_eigen_oracle();
    const ResultTable table = opposite_sweep();
    c3_clean_baseline(table);
    c4_rc_failure(table);
    c5_fbsr_robust(table);
    c6_ranking_quality(table);
    c7_scaling_trend();
    c8_failure_demo();
    c9_good_voter_retention();
    c10_indistinguishability();
    c11_kendall_oracle();
    c12_corpus_ordering(argv[1]);
    c13_determinism();
    operating_example();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed, total %.1fs\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
