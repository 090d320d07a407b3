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

#include "byzrank/voting.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "byzrank/errors.hpp"
#include "byzrank/metrics.hpp"

namespace byzrank {

namespace {

// Seed-space tags keep the stream families disjoint.
constexpr std::uint64_t kVoteTag = 0x766f7465;          // per-(voter, pair) votes
constexpr std::uint64_t kEdgeUnitTag = 0x65647465;      // per-edge voter samples
// Object and bucket units share one family keyed by (object, bucket): a
// whole-neighborhood bucket then draws exactly the per-object sample, which
// makes the single-bucket pipeline coincide with the unbucketed one.
constexpr std::uint64_t kUnitTag = 0x756e6974;
constexpr std::uint64_t kStrategyPrepTag = 0x70726570;  // strategy one-time state

int checked_index(const WeightVector& w, int idx) {
  if (idx < 0 || idx >= w.size()) {
    throw ParameterError("object index " + std::to_string(idx) + " outside weight vector");
  }
  return idx;
}

}  // namespace

SeedStream vote_stream(std::uint64_t vote_seed, int voter, int a, int b) {
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  return SeedStream(derive_seed(vote_seed, kVoteTag, voter, lo, hi));
}

bool good_first_wins(const WeightVector& w, int a, int b, SeedStream& stream) {
  checked_index(w, a);
  checked_index(w, b);
  const double wa = w[a];
  const double wb = w[b];
  return stream.bernoulli(wa / (wa + wb));
}

// ---------------------------------------------------------------------------
// Strategies

FixedOrderStrategy::FixedOrderStrategy(std::vector<int> preference_order) {
  const int n = static_cast<int>(preference_order.size());
  position_.assign(static_cast<std::size_t>(n), -1);
  for (int rank = 0; rank < n; ++rank) {
    const int obj = preference_order[static_cast<std::size_t>(rank)];
    if (obj < 0 || obj >= n || position_[static_cast<std::size_t>(obj)] != -1) {
      throw ParameterError("fixed_order: preference order is not a permutation");
    }
    position_[static_cast<std::size_t>(obj)] = rank;
  }
}

void FixedOrderStrategy::prepare(const AdversaryContext& ctx,
                                 const std::vector<int>& byzantine_ids, std::uint64_t seed) {
  (void)byzantine_ids;
  if (ctx.weights == nullptr) throw ParameterError("fixed_order: missing weights in context");
  const int n = ctx.weights->size();
  if (!position_.empty()) {
    if (static_cast<int>(position_.size()) != n) {
      throw ParameterError("fixed_order: preference order length differs from object count");
    }
    return;
  }
  SeedStream stream(derive_seed(seed, hash_label("fixed_order")));
  const std::vector<int> order = random_permutation(n, stream);
  position_.assign(static_cast<std::size_t>(n), -1);
  for (int rank = 0; rank < n; ++rank) {
    position_[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] = rank;
  }
}

bool FixedOrderStrategy::first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                                    SeedStream& stream) const {
  (void)ctx;
  (void)voter;
  (void)stream;
  if (position_.empty()) throw ParameterError("fixed_order: strategy was never prepared");
  return position_[static_cast<std::size_t>(a)] < position_[static_cast<std::size_t>(b)];
}

bool OppositeStrategy::first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                                  SeedStream& stream) const {
  (void)voter;
  (void)stream;
  const WeightVector& w = *ctx.weights;
  checked_index(w, a);
  checked_index(w, b);
  return w[a] <= w[b];
}

bool OppositeProbabilisticStrategy::first_wins(const AdversaryContext& ctx, int voter, int a,
                                               int b, SeedStream& stream) const {
  (void)voter;
  const WeightVector& w = *ctx.weights;
  checked_index(w, a);
  checked_index(w, b);
  return stream.bernoulli(w[b] / (w[a] + w[b]));
}

bool RandomSubsetStrategy::first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                                      SeedStream& stream) const {
  (void)voter;
  const WeightVector& w = *ctx.weights;
  checked_index(w, a);
  checked_index(w, b);
  if (stream.bernoulli(0.5)) return good_first_wins(w, a, b, stream);
  return w[a] <= w[b];
}

OppositeRandomFlipsStrategy::OppositeRandomFlipsStrategy(int num_swaps) : num_swaps_(num_swaps) {
  if (num_swaps < 0) throw ParameterError("opposite_random_flips: num_swaps must be >= 0");
}

void OppositeRandomFlipsStrategy::prepare(const AdversaryContext& ctx,
                                          const std::vector<int>& byzantine_ids,
                                          std::uint64_t seed) {
  if (ctx.weights == nullptr) {
    throw ParameterError("opposite_random_flips: missing weights in context");
  }
  const int n = ctx.weights->size();
  std::vector<int> reversed = ranking_from_scores(ctx.weights->w);
  std::reverse(reversed.begin(), reversed.end());
  position_by_voter_.clear();
  position_by_voter_.reserve(byzantine_ids.size());
  for (int voter : byzantine_ids) {
    std::vector<int> perm = reversed;
    SeedStream stream(derive_seed(seed, hash_label("opposite_random_flips"), voter));
    for (int s = 0; s < num_swaps_; ++s) {
      const auto x = static_cast<std::size_t>(stream.next_below(static_cast<std::uint64_t>(n)));
      const auto y = static_cast<std::size_t>(stream.next_below(static_cast<std::uint64_t>(n)));
      std::swap(perm[x], perm[y]);
    }
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int rank = 0; rank < n; ++rank) {
      position[static_cast<std::size_t>(perm[static_cast<std::size_t>(rank)])] = rank;
    }
    position_by_voter_.emplace(voter, std::move(position));
  }
}

bool OppositeRandomFlipsStrategy::first_wins(const AdversaryContext& ctx, int voter, int a,
                                             int b, SeedStream& stream) const {
  (void)ctx;
  (void)stream;
  const auto it = position_by_voter_.find(voter);
  if (it == position_by_voter_.end()) {
    throw ParameterError("opposite_random_flips: voter " + std::to_string(voter) +
                         " has no prepared permutation");
  }
  return it->second[static_cast<std::size_t>(a)] < it->second[static_cast<std::size_t>(b)];
}

BtlProxyStrategy::BtlProxyStrategy(WeightVector proxy) : proxy_(std::move(proxy)) {
  if (proxy_.size() < 1) throw ParameterError("btl_proxy: empty proxy weight vector");
}

bool BtlProxyStrategy::first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                                  SeedStream& stream) const {
  (void)ctx;
  (void)voter;
  return good_first_wins(proxy_, a, b, stream);
}

std::shared_ptr<ByzantineStrategy> make_strategy(const std::string& id, int orf_num_swaps) {
  if (id == "fixed_order") return std::make_shared<FixedOrderStrategy>();
  if (id == "opposite") return std::make_shared<OppositeStrategy>();
  if (id == "opposite_probabilistic") return std::make_shared<OppositeProbabilisticStrategy>();
  if (id == "random_subset") return std::make_shared<RandomSubsetStrategy>();
  if (id == "opposite_random_flips") {
    return std::make_shared<OppositeRandomFlipsStrategy>(orf_num_swaps);
  }
  throw ParameterError(
      "unknown strategy '" + id +
      "' (known: fixed_order, opposite, opposite_probabilistic, random_subset, "
      "opposite_random_flips)");
}

// ---------------------------------------------------------------------------
// Population

VoterPopulation::VoterPopulation(int total, int byzantine_count,
                                 std::shared_ptr<ByzantineStrategy> strategy,
                                 std::uint64_t vote_seed)
    : VoterPopulation(total,
                      [&] {
                        if (byzantine_count < 0 || byzantine_count > total) {
                          throw ParameterError("byzantine count must lie in [0, K]");
                        }
                        std::vector<int> ids(static_cast<std::size_t>(byzantine_count));
                        std::iota(ids.begin(), ids.end(), 0);
                        return ids;
                      }(),
                      std::move(strategy), vote_seed) {}

VoterPopulation::VoterPopulation(int total, std::vector<int> byzantine_ids,
                                 std::shared_ptr<ByzantineStrategy> strategy,
                                 std::uint64_t vote_seed)
    : total_(total),
      byzantine_ids_(std::move(byzantine_ids)),
      strategy_(std::move(strategy)),
      vote_seed_(vote_seed) {
  if (total_ < 1) throw ParameterError("population needs K >= 1 voters");
  byzantine_flag_.assign(static_cast<std::size_t>(total_), 0);
  for (int id : byzantine_ids_) {
    if (id < 0 || id >= total_) {
      throw ParameterError("byzantine id " + std::to_string(id) + " outside 0..K-1");
    }
    if (byzantine_flag_[static_cast<std::size_t>(id)]) {
      throw ParameterError("duplicate byzantine id " + std::to_string(id));
    }
    byzantine_flag_[static_cast<std::size_t>(id)] = 1;
  }
  std::sort(byzantine_ids_.begin(), byzantine_ids_.end());
  if (!byzantine_ids_.empty() && strategy_ == nullptr) {
    throw ParameterError("byzantine voters present but no strategy given");
  }
}

// ---------------------------------------------------------------------------
// Assignment and collection

std::vector<std::vector<int>> split_into_buckets(const std::vector<int>& values, int max_size) {
  if (max_size < 1) throw ParameterError("bucket size must be >= 1");
  const int d = static_cast<int>(values.size());
  std::vector<std::vector<int>> buckets;
  if (d == 0) return buckets;
  const int count = (d + max_size - 1) / max_size;
  const int base = d / count;
  const int remainder = d % count;  // this many buckets get base + 1
  buckets.reserve(static_cast<std::size_t>(count));
  auto it = values.begin();
  for (int b = 0; b < count; ++b) {
    const int len = base + (b < remainder ? 1 : 0);
    buckets.emplace_back(it, it + len);
    it += len;
  }
  return buckets;
}

Assignment assign_voters(const ComparisonGraph& g, int total_voters, int k, AssignMode mode,
                         std::uint64_t seed, int max_bucket_size) {
  if (total_voters < 1) throw ParameterError("need K >= 1 voters");
  if (k < 1) throw ParameterError("need k >= 1 voters per unit");
  if (k > total_voters) {
    throw ParameterError("k=" + std::to_string(k) + " exceeds K=" + std::to_string(total_voters) +
                         " for without-replacement sampling");
  }
  Assignment assignment;
  assignment.mode = mode;
  switch (mode) {
    case AssignMode::per_edge: {
      for (const auto& [i, j] : g.edges) {
        SeedStream stream(derive_seed(seed, kEdgeUnitTag, i, j));
        std::vector<int> sample = sample_without_replacement(k, total_voters, stream);
        VoteUnit lo;
        lo.object = i;
        lo.neighbors = {j};
        lo.voters = sample;
        VoteUnit hi;
        hi.object = j;
        hi.neighbors = {i};
        hi.voters = std::move(sample);
        assignment.units.push_back(std::move(lo));
        assignment.units.push_back(std::move(hi));
      }
      break;
    }
    case AssignMode::per_object: {
      for (int i = 0; i < g.n; ++i) {
        const auto& nb = g.neighbors[static_cast<std::size_t>(i)];
        if (nb.empty()) continue;
        SeedStream stream(derive_seed(seed, kUnitTag, i, 0));
        VoteUnit unit;
        unit.object = i;
        unit.neighbors = nb;
        unit.voters = sample_without_replacement(k, total_voters, stream);
        assignment.units.push_back(std::move(unit));
      }
      break;
    }
    case AssignMode::per_bucket: {
      int max_size = max_bucket_size;
      if (max_size == 0) {
        max_size = g.n > 1 ? static_cast<int>(std::bit_width(static_cast<unsigned>(g.n - 1))) : 1;
      }
      if (max_size < 1) throw ParameterError("bucket size must be >= 1");
      for (int i = 0; i < g.n; ++i) {
        const auto buckets = split_into_buckets(g.neighbors[static_cast<std::size_t>(i)], max_size);
        for (std::size_t l = 0; l < buckets.size(); ++l) {
          SeedStream stream(derive_seed(seed, kUnitTag, i, l));
          VoteUnit unit;
          unit.object = i;
          unit.bucket = static_cast<int>(l);
          unit.neighbors = buckets[l];
          unit.voters = sample_without_replacement(k, total_voters, stream);
          assignment.units.push_back(std::move(unit));
        }
      }
      break;
    }
  }
  return assignment;
}

VoteLedger collect_votes(const ComparisonGraph& g, const WeightVector& w,
                         const VoterPopulation& pop, Assignment assignment) {
  if (w.size() != g.n) {
    throw ParameterError("weight vector length " + std::to_string(w.size()) +
                         " does not match graph n=" + std::to_string(g.n));
  }
  VoteLedger ledger;
  ledger.n = g.n;
  ledger.units = std::move(assignment.units);
  for (VoteUnit& unit : ledger.units) {
    unit.beats_focal.assign(static_cast<std::size_t>(unit.k()) * unit.d(), 0);
    unit.surviving.assign(static_cast<std::size_t>(unit.k()), 1);
  }

  AdversaryContext ctx;
  ctx.weights = &w;
  ctx.graph = &g;
  ctx.good_votes = &ledger;
  ByzantineStrategy* strategy = pop.strategy();
  if (pop.byzantine_count() > 0) {
    strategy->prepare(ctx, pop.byzantine_ids(),
                      derive_seed(pop.vote_seed(), kStrategyPrepTag));
  }

  // Good voters cast first so the adversary context sees a complete good-vote
  // ledger; rows stay zero until their pass fills them.
  for (const bool byzantine_pass : {false, true}) {
    for (VoteUnit& unit : ledger.units) {
      const int d = unit.d();
      for (int v = 0; v < unit.k(); ++v) {
        const int voter = unit.voters[static_cast<std::size_t>(v)];
        if (voter >= pop.total()) {
          throw ParameterError("assignment references voter " + std::to_string(voter) +
                               " outside the population");
        }
        if (pop.is_byzantine(voter) != byzantine_pass) continue;
        for (int j = 0; j < d; ++j) {
          const int nbr = unit.neighbors[static_cast<std::size_t>(j)];
          const int a = std::min(unit.object, nbr);
          const int b = std::max(unit.object, nbr);
          SeedStream stream = vote_stream(pop.vote_seed(), voter, a, b);
          const bool first = byzantine_pass ? strategy->first_wins(ctx, voter, a, b, stream)
                                            : good_first_wins(w, a, b, stream);
          const bool neighbor_beats = (nbr == a) ? first : !first;
          unit.beats_focal[static_cast<std::size_t>(v) * d + j] =
              neighbor_beats ? 1 : 0;
        }
      }
    }
  }
  return ledger;
}

PairAggregates aggregate_votes(const VoteLedger& ledger) {
  PairAggregates agg;
  agg.n = ledger.n;
  const std::size_t cells = static_cast<std::size_t>(ledger.n) * ledger.n;
  agg.frac.assign(cells, 0.0);
  agg.count.assign(cells, 0);
  std::vector<int> wins(cells, 0);
  for (const VoteUnit& unit : ledger.units) {
    const int d = unit.d();
    for (int v = 0; v < unit.k(); ++v) {
      if (!unit.surviving[static_cast<std::size_t>(v)]) continue;
      const std::uint8_t* row = unit.beats_focal.data() + static_cast<std::size_t>(v) * d;
      for (int j = 0; j < d; ++j) {
        const std::size_t idx =
            static_cast<std::size_t>(unit.object) * ledger.n + unit.neighbors[static_cast<std::size_t>(j)];
        ++agg.count[idx];
        wins[idx] += row[j];
      }
    }
  }
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (agg.count[idx] > 0) {
      agg.frac[idx] = static_cast<double>(wins[idx]) / agg.count[idx];
    }
  }
  return agg;
}

}  // namespace byzrank
