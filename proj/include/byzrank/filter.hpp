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

#ifndef BYZRANK_FILTER_HPP_
#define BYZRANK_FILTER_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "byzrank/graph.hpp"
#include "byzrank/spectral.hpp"
#include "byzrank/voting.hpp"

namespace byzrank {

enum class FilterMode { theoretical, empirical };
enum class FilterAlgo { bsr, fbsr };

struct FilterParams {
  FilterMode mode = FilterMode::empirical;
  // Theoretical-mode quality exponent; must be >= 1 for the tail bounds the
  // thresholds come from.
  double q = 1.0;
  // Graph-density constant inside the bucketed-variant alpha. sqrt(2)
  // corresponds to the default edge probability 20*ln(n)/n.
  double c = 1.4142135623730951;
  // Bucket cap for fbsr assignment; 0 picks ceil(log2 n).
  int max_bucket_size = 0;
  // Empirical mode replaces both thresholds; real-data runs keep the
  // theoretical flag-count bound and only soften the distance.
  bool empirical_max_out = true;
  // Refuse units whose 2^d sign-vector scan would exceed this dimension.
  int enumeration_cap = 25;
};

// Per-unit working thresholds, recomputed per call so nothing goes stale.
struct UnitThresholds {
  double delta = 0.0;          // sqrt((q/2) * d * ln k)
  double flag_distance = 0.0;  // voter flagged when |U_v - median| >= this
  std::int32_t flag_distance_int = 0;  // ceil(flag_distance); equivalent on integer U
  double max_out = 0.0;        // flag count reaching this triggers removal
  // Set when the theoretical max_out exceeds k: no count can reach it, so
  // removal cannot trigger (the small-k regime warning).
  bool removal_disabled = false;
};

// alpha chosen so k^(1-alpha) equals d_max.
double bsr_alpha(int k, int d_max);
// alpha for the bucketed variant: k^(1-alpha) = (2 + c/8) * ln n.
double fbsr_alpha(int k, int n, double c);

UnitThresholds unit_thresholds(int k, int d, double alpha, const FilterParams& params);

struct UnitFilterStats {
  int object = -1;
  int bucket = 0;
  int assigned = 0;
  int removed = 0;
  int removed_good = -1;      // -1 when ground truth is unavailable
  int removed_byzantine = -1;
  int triggering_xi = 0;      // sign vectors whose flag count reached max_out
  int max_flag_count = 0;     // largest flag count seen over all sign vectors
};

struct FilterReport {
  double alpha = 0.0;
  double max_out = 0.0;
  bool max_out_unreachable = false;
  std::vector<UnitFilterStats> units;

  int total_assigned() const;
  int total_removed() const;
  // CSV: object,bucket,assigned,removed,removed_good,removed_byz; the
  // ground-truth columns stay empty outside simulation.
  void write_csv(std::ostream& os) const;
};

// The sign-vector scan over one unit. For every xi in {-1,+1}^d: U = T xi per
// voter, m = lower median of U, flag v iff |U_v - m| >= the flag distance;
// after the full enumeration, voters flagged under any triggering xi (flag
// count >= max_out) are removed. Returns surviving row indices, ascending.
// Enumeration walks a Gray code so successive xi differ in one coordinate.
std::vector<int> bound_sum_deviations(const VoteUnit& unit, const UnitThresholds& thresholds,
                                      int enumeration_cap, UnitFilterStats* stats = nullptr);

// Naive U = T xi for one explicit sign vector; the reference the scan is
// tested against.
std::vector<std::int32_t> ksi_scan(const VoteUnit& unit, const std::vector<int>& xi);

// Runs bound_sum_deviations over every unit, zeroing surviving bits in
// place. Ground-truth removal splits are filled when pop is given.
FilterReport filter_ledger(VoteLedger& ledger, const ComparisonGraph& g, FilterAlgo algo,
                           const FilterParams& params, const VoterPopulation* pop = nullptr);

struct RankingOutcome {
  StationaryResult stationary;
  FilterReport report;
};

// Per-object assignment, one scan over each whole neighborhood (refuses
// degrees over the enumeration cap), then the spectral step on survivors.
RankingOutcome bsr_rank(const ComparisonGraph& g, const WeightVector& w,
                        const VoterPopulation& pop, int k, const FilterParams& params,
                        const StationaryOptions& opts, std::uint64_t assign_seed);

// Bucketed variant: near-equal buckets of each neighborhood, a fresh voter
// sample and scan per bucket.
RankingOutcome fbsr_rank(const ComparisonGraph& g, const WeightVector& w,
                         const VoterPopulation& pop, int k, const FilterParams& params,
                         const StationaryOptions& opts, std::uint64_t assign_seed);

}  // namespace byzrank

#endif  // BYZRANK_FILTER_HPP_
