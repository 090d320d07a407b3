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

#include "byzrank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "byzrank/errors.hpp"
#include "byzrank/metrics.hpp"

namespace byzrank {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Work-stealing loop over [0, count); task order never affects stored
// results because every task owns a distinct output slot.
void parallel_run(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct SweepCell {
  std::string strategy;
  double bf = 0.0;
  int n = 0;
  int k = 0;
  int pop = 0;  // population the cell samples its k voters from
};

void validate_common(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
  if (cfg.total_voters < 1) throw ParameterError("K must be >= 1");
  for (double bf : cfg.bf_grid) {
    if (!(bf >= 0.0 && bf <= 1.0)) {
      throw ParameterError("byzantine fraction " + fmtg(bf) + " outside [0,1]");
    }
  }
  if (cfg.strategies.empty()) throw ParameterError("no strategies selected");
  if (cfg.algorithms.empty()) throw ParameterError("no algorithms selected");
  for (const auto& algo : cfg.algorithms) {
    if (algo != "rc" && algo != "bsr" && algo != "fbsr") {
      throw ParameterError("unknown algorithm '" + algo + "' (known: rc, bsr, fbsr)");
    }
  }
  if (cfg.p >= 0.0 && cfg.p > 1.0) throw ParameterError("edge probability p must be <= 1");
  if (cfg.weights != "uniform" && cfg.weights != "skewed") {
    throw ParameterError("unknown weight generator '" + cfg.weights + "' (known: uniform, skewed)");
  }
}

double effective_p(const ExperimentConfig& cfg, int n) {
  if (cfg.p >= 0.0) return cfg.p;
  const double p = cfg.p_log_coeff * std::log(static_cast<double>(n)) / n;
  return std::min(1.0, p);
}

WeightVector make_truth(const ExperimentConfig& cfg, int n, std::uint64_t seed) {
  if (cfg.weights == "skewed") return make_skewed_weights(n, cfg.skew_b);
  return sample_uniform_weights(n, cfg.weight_lo, cfg.weight_hi, seed);
}

// One sweep trial: graph, weights, and vote streams are fixed by the trial
// seed and shared by every algorithm, so algorithm columns are paired.
void run_sweep_trial(const ExperimentConfig& cfg, const SweepCell& cell, int trial,
                     TrialResult* out) {
  const std::uint64_t trial_base =
      derive_seed(cfg.seed, hash_label(cell.strategy.c_str()), std::bit_cast<std::uint64_t>(cell.bf),
                  cell.n, cell.k, trial);
  const double p = effective_p(cfg, cell.n);

  ComparisonGraph g;
  int resamples = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= cfg.graph_attempts) {
      throw FeasibilityError("no connected graph in " + std::to_string(cfg.graph_attempts) +
                             " samples at n=" + std::to_string(cell.n) + ", p=" + fmtg(p));
    }
    g = generate_er_graph(cell.n, p, derive_seed(trial_base, 1, attempt));
    if (is_connected(g)) break;
    ++resamples;
  }

  const WeightVector truth = make_truth(cfg, cell.n, derive_seed(trial_base, 2));
  const int byz_count = static_cast<int>(std::llround(cell.bf * cell.pop));
  VoterPopulation pop(cell.pop, byz_count,
                      byz_count > 0 ? make_strategy(cell.strategy, cfg.orf_swaps) : nullptr,
                      derive_seed(trial_base, 3));
  const std::uint64_t assign_seed = derive_seed(trial_base, 4);
  const std::vector<int> truth_ranking = ranking_from_scores(truth.w);

  for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
    const std::string& algo = cfg.algorithms[ai];
    StationaryResult st;
    if (algo == "rc") {
      Assignment assignment =
          assign_voters(g, cell.pop, cell.k, AssignMode::per_edge, assign_seed);
      const VoteLedger ledger = collect_votes(g, truth, pop, std::move(assignment));
      st = rank_centrality(ledger, g, cfg.spectral);
    } else if (algo == "bsr") {
      st = bsr_rank(g, truth, pop, cell.k, cfg.filter, cfg.spectral, assign_seed).stationary;
    } else {
      st = fbsr_rank(g, truth, pop, cell.k, cfg.filter, cfg.spectral, assign_seed).stationary;
    }
    TrialResult& r = out[ai];
    r.strategy = cell.strategy;
    r.algo = algo;
    r.bf = cell.bf;
    r.n = cell.n;
    r.k = cell.k;
    r.trial = trial;
    r.trial_seed = trial_base;
    r.rel_l2 = rel_l2(st.pi, truth.w);
    r.kendall = kendall_tau(ranking_from_scores(st.pi), truth_ranking);
    r.graph_resamples = resamples;
  }
}

ResultTable run_cells(const ExperimentConfig& cfg, const std::vector<SweepCell>& cells) {
  const int algos = static_cast<int>(cfg.algorithms.size());
  ResultTable table;
  table.rows.resize(cells.size() * static_cast<std::size_t>(cfg.trials) * algos);
  const int tasks = static_cast<int>(cells.size()) * cfg.trials;
  parallel_run(tasks, resolve_threads(cfg.threads), [&](int t) {
    const std::size_t cell_index = static_cast<std::size_t>(t) / cfg.trials;
    const int trial = t % cfg.trials;
    run_sweep_trial(cfg, cells[cell_index], trial,
                    table.rows.data() + static_cast<std::size_t>(t) * algos);
  });
  compute_aggregates(table);
  return table;
}

std::string cell_key(const TrialResult& r) {
  return r.strategy + "|" + r.algo + "|" + fmt17(r.bf) + "|" + std::to_string(r.n) + "|" +
         std::to_string(r.k);
}

}  // namespace

void compute_aggregates(ResultTable& table) {
  table.aggregates.clear();
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<const TrialResult*>> groups;
  for (const TrialResult& r : table.rows) {
    const std::string key = cell_key(r);
    const auto [it, inserted] = index.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&r);
  }
  table.aggregates.reserve(groups.size());
  for (const auto& group : groups) {
    CellAggregate agg;
    const TrialResult& first = *group.front();
    agg.strategy = first.strategy;
    agg.algo = first.algo;
    agg.bf = first.bf;
    agg.n = first.n;
    agg.k = first.k;
    agg.trials = static_cast<int>(group.size());
    double sum_l2 = 0.0, sum_tau = 0.0;
    for (const TrialResult* r : group) {
      sum_l2 += r->rel_l2;
      sum_tau += r->kendall;
    }
    agg.mean_rel_l2 = sum_l2 / agg.trials;
    agg.mean_kendall = sum_tau / agg.trials;
    if (agg.trials > 1) {
      double ss_l2 = 0.0, ss_tau = 0.0;
      for (const TrialResult* r : group) {
        ss_l2 += (r->rel_l2 - agg.mean_rel_l2) * (r->rel_l2 - agg.mean_rel_l2);
        ss_tau += (r->kendall - agg.mean_kendall) * (r->kendall - agg.mean_kendall);
      }
      agg.std_rel_l2 = std::sqrt(ss_l2 / (agg.trials - 1));
      agg.std_kendall = std::sqrt(ss_tau / (agg.trials - 1));
    }
    table.aggregates.push_back(std::move(agg));
  }
}

void ResultTable::write_csv(std::ostream& os) const {
  os << "strategy,algo,bf,n,k,trial,stat,rel_l2,kendall_tau,graph_resamples\n";
  for (const TrialResult& r : rows) {
    os << r.strategy << "," << r.algo << "," << fmtg(r.bf) << "," << r.n << "," << r.k << ","
       << r.trial << ",raw," << fmt17(r.rel_l2) << "," << fmt17(r.kendall) << ","
       << r.graph_resamples << "\n";
  }
  for (const CellAggregate& a : aggregates) {
    const std::string prefix =
        a.strategy + "," + a.algo + "," + fmtg(a.bf) + "," + std::to_string(a.n) + "," +
        std::to_string(a.k) + ",";
    os << prefix << ",mean," << fmt17(a.mean_rel_l2) << "," << fmt17(a.mean_kendall) << ",\n";
    os << prefix << ",std," << fmt17(a.std_rel_l2) << "," << fmt17(a.std_kendall) << ",\n";
  }
}

ResultTable run_synthetic_sweep(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.n < 2) throw ParameterError("synthetic sweep needs n >= 2");
  if (cfg.k < 1 || cfg.k > cfg.total_voters) throw ParameterError("need 1 <= k <= K");
  std::vector<SweepCell> cells;
  for (const auto& strategy : cfg.strategies) {
    for (double bf : cfg.bf_grid) {
      cells.push_back({strategy, bf, cfg.n, cfg.k, cfg.total_voters});
    }
  }
  return run_cells(cfg, cells);
}

ResultTable run_scaling_sweep(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.n_grid.empty()) throw ParameterError("scaling sweep needs a nonempty n grid");
  std::vector<SweepCell> cells;
  for (const auto& strategy : cfg.strategies) {
    for (double bf : cfg.bf_grid) {
      for (int n : cfg.n_grid) {
        if (n < 2) throw ParameterError("scaling sweep needs n >= 2");
        // k = n here, so the population grows with the grid when the
        // configured K would fall below it.
        cells.push_back({strategy, bf, n, n, std::max(cfg.total_voters, n)});
      }
    }
  }
  return run_cells(cfg, cells);
}

ResultTable run_failure_demo(const ExperimentConfig& cfg) {
  ExperimentConfig demo = cfg;
  demo.weights = "skewed";
  demo.strategies = {"opposite"};
  demo.algorithms = {"rc"};
  if (!(demo.skew_b > 1.0)) throw ParameterError("failure demo needs skew b > 1");
  return run_synthetic_sweep(demo);
}

double failure_growth_correlation(const ResultTable& table) {
  std::vector<double> xs, ys;
  for (const CellAggregate& a : table.aggregates) {
    if (a.algo != "rc") continue;
    xs.push_back(a.bf);
    ys.push_back(a.mean_rel_l2);
  }
  return pearson_correlation(xs, ys);
}

// ---------------------------------------------------------------------------
// Ranking-corpus runs

namespace {

// Complete-graph ledger where every voter answers every pair from their own
// full ranking.
VoteLedger ledger_from_rankings(const std::vector<std::vector<int>>& rankings, int m) {
  const int voter_count = static_cast<int>(rankings.size());
  std::vector<std::vector<int>> position(static_cast<std::size_t>(voter_count));
  for (int v = 0; v < voter_count; ++v) {
    position[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(m), 0);
    for (int rank = 0; rank < m; ++rank) {
      position[static_cast<std::size_t>(v)][static_cast<std::size_t>(
          rankings[static_cast<std::size_t>(v)][static_cast<std::size_t>(rank)])] = rank;
    }
  }
  VoteLedger ledger;
  ledger.n = m;
  ledger.units.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    VoteUnit unit;
    unit.object = i;
    unit.neighbors.reserve(static_cast<std::size_t>(m) - 1);
    for (int j = 0; j < m; ++j) {
      if (j != i) unit.neighbors.push_back(j);
    }
    unit.voters.resize(static_cast<std::size_t>(voter_count));
    std::iota(unit.voters.begin(), unit.voters.end(), 0);
    const int d = unit.d();
    unit.beats_focal.assign(static_cast<std::size_t>(voter_count) * d, 0);
    unit.surviving.assign(static_cast<std::size_t>(voter_count), 1);
    for (int v = 0; v < voter_count; ++v) {
      const auto& pos = position[static_cast<std::size_t>(v)];
      for (int j = 0; j < d; ++j) {
        const int nbr = unit.neighbors[static_cast<std::size_t>(j)];
        unit.beats_focal[static_cast<std::size_t>(v) * d + j] =
            pos[static_cast<std::size_t>(nbr)] < pos[static_cast<std::size_t>(i)] ? 1 : 0;
      }
    }
    ledger.units.push_back(std::move(unit));
  }
  return ledger;
}

}  // namespace

ResultTable run_ranking_dataset(const RankingDataset& data, const ExperimentConfig& cfg) {
  if (data.objects < 2) throw ParameterError("dataset needs at least 2 objects");
  if (data.voters() < 1) throw ParameterError("dataset needs at least one ranking");
  if (cfg.trials < 1) throw ParameterError("trials must be >= 1");
  for (const auto& strategy : cfg.strategies) {
    if (strategy != "fixed_order" && strategy != "opposite" &&
        strategy != "opposite_random_flips") {
      throw ParameterError("dataset runs need permutation strategies (fixed_order, opposite, "
                           "opposite_random_flips); got '" + strategy + "'");
    }
  }
  for (const auto& algo : cfg.algorithms) {
    if (algo != "rc" && algo != "bsr") {
      throw ParameterError("dataset runs support rc and bsr; got '" + algo + "'");
    }
  }
  for (double bf : cfg.bf_grid) {
    if (!(bf >= 0.0 && bf <= 1.0)) {
      throw ParameterError("byzantine fraction " + fmtg(bf) + " outside [0,1]");
    }
  }

  const int m = data.objects;
  const int voter_count = data.voters();
  const ComparisonGraph g = complete_graph(m);
  const VoteLedger truth_ledger = ledger_from_rankings(data.rankings, m);
  const std::vector<double> pi_true = rank_centrality(truth_ledger, g, cfg.spectral).pi;
  const std::vector<int> truth_ranking = ranking_from_scores(pi_true);
  std::vector<int> reversed_truth(truth_ranking.rbegin(), truth_ranking.rend());

  struct DatasetCell {
    std::string strategy;
    double bf;
    std::vector<int> byzantine_ids;
  };
  std::vector<DatasetCell> cells;
  for (const auto& strategy : cfg.strategies) {
    for (double bf : cfg.bf_grid) {
      const int byz_count = static_cast<int>(std::llround(bf * voter_count));
      // The Byzantine subset is a cell property: deterministic strategies
      // then repeat exactly across trials (their std is a true zero).
      SeedStream stream(
          derive_seed(cfg.seed, hash_label(strategy.c_str()), std::bit_cast<std::uint64_t>(bf), 10));
      cells.push_back({strategy, bf, sample_without_replacement(byz_count, voter_count, stream)});
    }
  }

  const int algos = static_cast<int>(cfg.algorithms.size());
  ResultTable table;
  table.rows.resize(cells.size() * static_cast<std::size_t>(cfg.trials) * algos);
  const int tasks = static_cast<int>(cells.size()) * cfg.trials;
  parallel_run(tasks, resolve_threads(cfg.threads), [&](int t) {
    const DatasetCell& cell = cells[static_cast<std::size_t>(t) / cfg.trials];
    const int trial = t % cfg.trials;
    const std::uint64_t trial_base =
        derive_seed(cfg.seed, hash_label(cell.strategy.c_str()),
                    std::bit_cast<std::uint64_t>(cell.bf), m, voter_count, trial);

    std::vector<std::vector<int>> corrupted = data.rankings;
    if (cell.strategy == "fixed_order") {
      SeedStream stream(derive_seed(trial_base, 11));
      const std::vector<int> perm = random_permutation(m, stream);
      for (int v : cell.byzantine_ids) corrupted[static_cast<std::size_t>(v)] = perm;
    } else if (cell.strategy == "opposite") {
      for (int v : cell.byzantine_ids) corrupted[static_cast<std::size_t>(v)] = reversed_truth;
    } else {
      for (int v : cell.byzantine_ids) {
        std::vector<int> perm = reversed_truth;
        SeedStream stream(derive_seed(trial_base, 12, v));
        for (int s = 0; s < cfg.orf_swaps; ++s) {
          const auto x = static_cast<std::size_t>(stream.next_below(static_cast<std::uint64_t>(m)));
          const auto y = static_cast<std::size_t>(stream.next_below(static_cast<std::uint64_t>(m)));
          std::swap(perm[x], perm[y]);
        }
        corrupted[static_cast<std::size_t>(v)] = perm;
      }
    }

    VoteLedger ledger = ledger_from_rankings(corrupted, m);
    for (int ai = 0; ai < algos; ++ai) {
      const std::string& algo = cfg.algorithms[static_cast<std::size_t>(ai)];
      StationaryResult st;
      if (algo == "rc") {
        st = rank_centrality(ledger, g, cfg.spectral);
      } else {
        VoteLedger filtered = ledger;
        filter_ledger(filtered, g, FilterAlgo::bsr, cfg.filter);
        st = rank_centrality(filtered, g, cfg.spectral);
      }
      TrialResult& r = table.rows[static_cast<std::size_t>(t) * algos + ai];
      r.strategy = cell.strategy;
      r.algo = algo;
      r.bf = cell.bf;
      r.n = m;
      r.k = voter_count;
      r.trial = trial;
      r.trial_seed = trial_base;
      r.rel_l2 = rel_l2(st.pi, pi_true);
      r.kendall = kendall_tau(ranking_from_scores(st.pi), truth_ranking);
      r.graph_resamples = 0;
    }
  });
  compute_aggregates(table);
  return table;
}

// ---------------------------------------------------------------------------
// Indistinguishability construction

IndistinguishabilityReport run_indistinguishability_demo(int n, double b, int total_voters,
                                                         int k, std::uint64_t seed) {
  if (total_voters < 2 || total_voters % 2 != 0) {
    throw ParameterError("the construction needs an even K >= 2");
  }
  if (k < 1 || k > total_voters) throw ParameterError("need 1 <= k <= K");
  const WeightVector straight = make_skewed_weights(n, b);
  const WeightVector mirrored = make_mirrored_skewed_weights(n, b);
  const ComparisonGraph g = complete_graph(n);
  const std::uint64_t vote_seed = derive_seed(seed, 21);
  const std::uint64_t assign_seed = derive_seed(seed, 22);
  const Assignment assignment =
      assign_voters(g, total_voters, k, AssignMode::per_object, assign_seed);

  const int half = total_voters / 2;
  std::vector<int> first_half(static_cast<std::size_t>(half));
  std::iota(first_half.begin(), first_half.end(), 0);
  std::vector<int> second_half(static_cast<std::size_t>(half));
  std::iota(second_half.begin(), second_half.end(), half);

  // Instance 1: truth = straight; the second half fakes the mirrored vector.
  // Instance 2 swaps both the roles and the truth. A voter's distribution is
  // identical in the two instances, and the per-(voter, pair) streams do not
  // depend on roles, so the drawn bits coincide.
  VoterPopulation pop1(total_voters, second_half,
                       std::make_shared<BtlProxyStrategy>(mirrored), vote_seed);
  VoterPopulation pop2(total_voters, first_half, std::make_shared<BtlProxyStrategy>(straight),
                       vote_seed);
  const VoteLedger ledger1 = collect_votes(g, straight, pop1, assignment);
  const VoteLedger ledger2 = collect_votes(g, mirrored, pop2, assignment);

  IndistinguishabilityReport report;
  report.n = n;
  report.b = b;
  report.total_voters = total_voters;
  report.k = k;
  report.seed = seed;
  report.bound = (b - 1.0) / (2.0 * b);
  report.units_compared = static_cast<int>(ledger1.units.size());
  bool identical = ledger1.units.size() == ledger2.units.size();
  std::size_t votes = 0;
  for (std::size_t u = 0; identical && u < ledger1.units.size(); ++u) {
    const VoteUnit& a = ledger1.units[u];
    const VoteUnit& bu = ledger2.units[u];
    identical = a.object == bu.object && a.bucket == bu.bucket && a.neighbors == bu.neighbors &&
                a.voters == bu.voters && a.beats_focal == bu.beats_focal;
    votes += a.beats_focal.size();
  }
  report.votes_compared = votes;
  report.identical = identical;

  const StationaryResult shared = rank_centrality(ledger1, g, StationaryOptions{});
  report.error_vs_straight = rel_l2(shared.pi, straight.w);
  report.error_vs_mirrored = rel_l2(shared.pi, mirrored.w);
  return report;
}

void write_report(const IndistinguishabilityReport& r, std::ostream& os) {
  os << "indistinguishability construction: n=" << r.n << " b=" << fmtg(r.b)
     << " K=" << r.total_voters << " k=" << r.k << " seed=" << r.seed << "\n";
  os << "units compared: " << r.units_compared << " (" << r.votes_compared << " votes)\n";
  os << "ledgers identical: " << (r.identical ? "yes" : "NO") << "\n";
  os << "shared estimate error vs straight truth:  " << fmt17(r.error_vs_straight) << "\n";
  os << "shared estimate error vs mirrored truth:  " << fmt17(r.error_vs_mirrored) << "\n";
  os << "worst-case error bound for any estimator: " << fmt17(r.bound) << "\n";
}

}  // namespace byzrank
