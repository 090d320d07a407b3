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

#include "byzrank/filter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>

#include "byzrank/errors.hpp"
#include "byzrank/kernels.hpp"

namespace byzrank {

double bsr_alpha(int k, int d_max) {
  if (k < 2) throw ParameterError("alpha needs k >= 2 voters");
  if (d_max < 1) throw ParameterError("alpha needs d_max >= 1");
  return 1.0 - std::log(static_cast<double>(d_max)) / std::log(static_cast<double>(k));
}

double fbsr_alpha(int k, int n, double c) {
  if (k < 2) throw ParameterError("alpha needs k >= 2 voters");
  if (n < 2) throw ParameterError("alpha needs n >= 2 objects");
  if (!(c > 0.0)) throw ParameterError("alpha needs c > 0");
  const double inner = (2.0 + c / 8.0) * std::log(static_cast<double>(n));
  return 1.0 - std::log(inner) / std::log(static_cast<double>(k));
}

UnitThresholds unit_thresholds(int k, int d, double alpha, const FilterParams& params) {
  if (k < 1) throw ParameterError("thresholds need k >= 1");
  if (d < 1) throw ParameterError("thresholds need d >= 1");
  if (!(params.q >= 1.0)) throw ParameterError("quality exponent q must be >= 1");
  UnitThresholds t;
  t.delta = std::sqrt((params.q / 2.0) * d * std::log(static_cast<double>(k)));
  const double theoretical_max_out =
      8.0 * std::pow(static_cast<double>(k), 1.0 - params.q) +
      8.0 * std::pow(static_cast<double>(k), 1.0 - alpha);
  if (params.mode == FilterMode::theoretical) {
    t.flag_distance = 5.0 * t.delta;
    t.max_out = theoretical_max_out;
  } else {
    t.flag_distance = 1.0 + std::sqrt(static_cast<double>(d));
    t.max_out = params.empirical_max_out ? static_cast<double>(k) / 20.0 : theoretical_max_out;
  }
  // A bound above k can never be reached by a flag count; removal is off and
  // the caller should surface the regime warning.
  t.removal_disabled = t.max_out > static_cast<double>(k);
  t.flag_distance_int = static_cast<std::int32_t>(std::ceil(t.flag_distance));
  return t;
}

std::vector<std::int32_t> ksi_scan(const VoteUnit& unit, const std::vector<int>& xi) {
  const int k = unit.k();
  const int d = unit.d();
  if (static_cast<int>(xi.size()) != d) {
    throw ParameterError("sign vector length does not match unit dimension");
  }
  for (int s : xi) {
    if (s != 1 && s != -1) throw ParameterError("sign vector entries must be +1 or -1");
  }
  std::vector<std::int32_t> u(static_cast<std::size_t>(k), 0);
  for (int v = 0; v < k; ++v) {
    const std::uint8_t* row = unit.beats_focal.data() + static_cast<std::size_t>(v) * d;
    std::int32_t acc = 0;
    for (int j = 0; j < d; ++j) acc += xi[static_cast<std::size_t>(j)] * row[j];
    u[static_cast<std::size_t>(v)] = acc;
  }
  return u;
}

std::vector<int> bound_sum_deviations(const VoteUnit& unit, const UnitThresholds& thresholds,
                                      int enumeration_cap, UnitFilterStats* stats) {
  const int k = unit.k();
  const int d = unit.d();
  if (k < 1) throw ParameterError("unit has no voters");
  if (d < 1) throw ParameterError("unit has no neighbors");
  if (d > enumeration_cap) {
    throw FeasibilityError("object " + std::to_string(unit.object) + " needs a scan over 2^" +
                           std::to_string(d) + " sign vectors, over the cap of 2^" +
                           std::to_string(enumeration_cap) +
                           "; split the neighborhood into buckets (fbsr)");
  }
  if (unit.beats_focal.size() != static_cast<std::size_t>(k) * d) {
    throw ParameterError("unit vote matrix has the wrong shape");
  }

  const kernels::Ops& ops = kernels::ops();

  // Column-major copy of T feeds the per-coordinate update.
  std::vector<std::uint8_t> cols(static_cast<std::size_t>(d) * k);
  for (int v = 0; v < k; ++v) {
    const std::uint8_t* row = unit.beats_focal.data() + static_cast<std::size_t>(v) * d;
    for (int j = 0; j < d; ++j) cols[static_cast<std::size_t>(j) * k + v] = row[j];
  }

  // Start at xi = all minus one: U_v = -rowsum_v.
  std::vector<std::int32_t> u(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < d; ++j) {
    ops.accumulate_column(u.data(), cols.data() + static_cast<std::size_t>(j) * k, k, -1);
  }

  std::vector<std::uint8_t> removed(static_cast<std::size_t>(k), 0);
  std::vector<int> hist(static_cast<std::size_t>(2 * d) + 1);
  int triggering = 0;
  int max_count = 0;
  const int median_rank = (k - 1) / 2 + 1;  // lower median as a 1-based count

  const auto scan_current = [&] {
    // U values live in [-d, d]; the lower median is the smallest value whose
    // cumulative count reaches median_rank.
    std::fill(hist.begin(), hist.end(), 0);
    for (int v = 0; v < k; ++v) ++hist[static_cast<std::size_t>(u[static_cast<std::size_t>(v)] + d)];
    int cum = 0;
    std::int32_t median = d;
    for (int b = 0; b <= 2 * d; ++b) {
      cum += hist[static_cast<std::size_t>(b)];
      if (cum >= median_rank) {
        median = b - d;
        break;
      }
    }
    const int count = ops.count_deviant(u.data(), k, median, thresholds.flag_distance_int);
    max_count = std::max(max_count, count);
    if (!thresholds.removal_disabled && static_cast<double>(count) >= thresholds.max_out) {
      ops.mark_deviant(u.data(), k, median, thresholds.flag_distance_int, removed.data());
      ++triggering;
    }
  };

  scan_current();
  std::vector<std::int8_t> sign(static_cast<std::size_t>(d), -1);
  const std::uint64_t total = std::uint64_t{1} << d;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    // Gray-code step: flipping coordinate ctz(idx) visits every sign vector.
    const int j = std::countr_zero(idx);
    sign[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(-sign[static_cast<std::size_t>(j)]);
    ops.accumulate_column(u.data(), cols.data() + static_cast<std::size_t>(j) * k, k,
                          2 * sign[static_cast<std::size_t>(j)]);
    scan_current();
  }

  std::vector<int> survivors;
  survivors.reserve(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) {
    if (!removed[static_cast<std::size_t>(v)]) survivors.push_back(v);
  }
  if (stats != nullptr) {
    stats->object = unit.object;
    stats->bucket = unit.bucket;
    stats->assigned = k;
    stats->removed = k - static_cast<int>(survivors.size());
    stats->triggering_xi = triggering;
    stats->max_flag_count = max_count;
  }
  if (survivors.empty()) {
    throw DegenerateFilterError("filter removed every voter of object " +
                                std::to_string(unit.object) + " bucket " +
                                std::to_string(unit.bucket));
  }
  return survivors;
}

int FilterReport::total_assigned() const {
  int total = 0;
  for (const auto& s : units) total += s.assigned;
  return total;
}

int FilterReport::total_removed() const {
  int total = 0;
  for (const auto& s : units) total += s.removed;
  return total;
}

void FilterReport::write_csv(std::ostream& os) const {
  os << "object,bucket,assigned,removed,removed_good,removed_byz\n";
  for (const auto& s : units) {
    os << s.object << "," << s.bucket << "," << s.assigned << "," << s.removed << ",";
    if (s.removed_good >= 0) os << s.removed_good;
    os << ",";
    if (s.removed_byzantine >= 0) os << s.removed_byzantine;
    os << "\n";
  }
}

FilterReport filter_ledger(VoteLedger& ledger, const ComparisonGraph& g, FilterAlgo algo,
                           const FilterParams& params, const VoterPopulation* pop) {
  if (ledger.units.empty()) throw ParameterError("cannot filter an empty ledger");
  FilterReport report;
  report.units.reserve(ledger.units.size());
  const int k = ledger.units.front().k();
  report.alpha = algo == FilterAlgo::bsr ? bsr_alpha(k, g.d_max)
                                         : fbsr_alpha(k, g.n, params.c);
  bool any_unreachable = false;
  for (VoteUnit& unit : ledger.units) {
    const UnitThresholds thresholds = unit_thresholds(unit.k(), unit.d(), report.alpha, params);
    any_unreachable = any_unreachable || thresholds.removal_disabled;
    UnitFilterStats stats;
    const std::vector<int> survivors =
        bound_sum_deviations(unit, thresholds, params.enumeration_cap, &stats);
    std::fill(unit.surviving.begin(), unit.surviving.end(), 0);
    for (int v : survivors) unit.surviving[static_cast<std::size_t>(v)] = 1;
    if (pop != nullptr) {
      stats.removed_good = 0;
      stats.removed_byzantine = 0;
      for (int v = 0; v < unit.k(); ++v) {
        if (unit.surviving[static_cast<std::size_t>(v)]) continue;
        const int voter = unit.voters[static_cast<std::size_t>(v)];
        if (pop->is_byzantine(voter)) {
          ++stats.removed_byzantine;
        } else {
          ++stats.removed_good;
        }
      }
    }
    report.units.push_back(stats);
    report.max_out = std::max(report.max_out, thresholds.max_out);
  }
  report.max_out_unreachable = any_unreachable;
  return report;
}

RankingOutcome bsr_rank(const ComparisonGraph& g, const WeightVector& w,
                        const VoterPopulation& pop, int k, const FilterParams& params,
                        const StationaryOptions& opts, std::uint64_t assign_seed) {
  Assignment assignment = assign_voters(g, pop.total(), k, AssignMode::per_object, assign_seed);
  VoteLedger ledger = collect_votes(g, w, pop, std::move(assignment));
  FilterReport report = filter_ledger(ledger, g, FilterAlgo::bsr, params, &pop);
  RankingOutcome outcome;
  outcome.stationary = rank_centrality(ledger, g, opts);
  outcome.report = std::move(report);
  return outcome;
}

RankingOutcome fbsr_rank(const ComparisonGraph& g, const WeightVector& w,
                         const VoterPopulation& pop, int k, const FilterParams& params,
                         const StationaryOptions& opts, std::uint64_t assign_seed) {
  Assignment assignment = assign_voters(g, pop.total(), k, AssignMode::per_bucket, assign_seed,
                                        params.max_bucket_size);
  VoteLedger ledger = collect_votes(g, w, pop, std::move(assignment));
  FilterReport report = filter_ledger(ledger, g, FilterAlgo::fbsr, params, &pop);
  RankingOutcome outcome;
  outcome.stationary = rank_centrality(ledger, g, opts);
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace byzrank
