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

#ifndef BYZRANK_VOTING_HPP_
#define BYZRANK_VOTING_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "byzrank/graph.hpp"
#include "byzrank/rng.hpp"
#include "byzrank/weights.hpp"

namespace byzrank {

// One query unit: a focal object (or one bucket of its neighborhood) and the
// k voters who answer every pair (object, neighbor) in it.
struct VoteUnit {
  int object = -1;
  int bucket = 0;
  std::vector<int> neighbors;  // sorted ascending
  std::vector<int> voters;     // sorted ascending
  // Row-major k x d: beats_focal[v*d + j] is 1 iff voters[v] said
  // neighbors[j] beats object.
  std::vector<std::uint8_t> beats_focal;
  // surviving[v] is zeroed when the filter removes voters[v]. Sized with
  // beats_focal at collection time.
  std::vector<std::uint8_t> surviving;

  int k() const { return static_cast<int>(voters.size()); }
  int d() const { return static_cast<int>(neighbors.size()); }
};

struct VoteLedger {
  int n = 0;
  std::vector<VoteUnit> units;
};

// Per-pair tallies over surviving votes. frac[i*n + j] is the fraction of
// surviving votes, among units focused on i, saying j beats i; count holds
// the surviving vote count behind each fraction.
struct PairAggregates {
  int n = 0;
  std::vector<double> frac;
  std::vector<int> count;

  double at(int i, int j) const { return frac[static_cast<std::size_t>(i) * n + j]; }
  int votes(int i, int j) const { return count[static_cast<std::size_t>(i) * n + j]; }
};

PairAggregates aggregate_votes(const VoteLedger& ledger);

// Everything the adversary model is allowed to see: the true weights, the
// comparison graph, and all good votes cast so far. The shipped strategies
// only read weights; the full context is plumbed for custom strategies.
struct AdversaryContext {
  const WeightVector* weights = nullptr;
  const ComparisonGraph* graph = nullptr;
  const VoteLedger* good_votes = nullptr;
};

// The per-(voter, pair) stream. Pure in its arguments: asking the same voter
// about the same unordered pair always replays the same draw, which is what
// enforces response consistency without a cache.
SeedStream vote_stream(std::uint64_t vote_seed, int voter, int a, int b);

// True-preference vote on the canonical pair (a, b), a < b: returns true
// (a wins) with probability w_a / (w_a + w_b).
bool good_first_wins(const WeightVector& w, int a, int b, SeedStream& stream);

// Adversary behavior. first_wins answers the canonical query (a, b), a < b,
// and must be deterministic given (voter, pair, stream state): the stream it
// receives is the voter's own pair stream. prepare is called once before any
// votes are cast and must be idempotent.
class ByzantineStrategy {
 public:
  virtual ~ByzantineStrategy() = default;
  virtual std::string id() const = 0;
  virtual void prepare(const AdversaryContext& ctx, const std::vector<int>& byzantine_ids,
                       std::uint64_t seed) {
    (void)ctx;
    (void)byzantine_ids;
    (void)seed;
  }
  virtual bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                          SeedStream& stream) const = 0;
};

// All Byzantine voters share one predetermined preference order.
class FixedOrderStrategy : public ByzantineStrategy {
 public:
  FixedOrderStrategy() = default;
  explicit FixedOrderStrategy(std::vector<int> preference_order);
  std::string id() const override { return "fixed_order"; }
  void prepare(const AdversaryContext& ctx, const std::vector<int>& byzantine_ids,
               std::uint64_t seed) override;
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;

 private:
  std::vector<int> position_;  // position_[obj] = rank, smaller preferred
};

// Deterministically vote for the lower-weight object (ties go to the first).
class OppositeStrategy : public ByzantineStrategy {
 public:
  std::string id() const override { return "opposite"; }
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;
};

// A good voter's coin with the success probability flipped.
class OppositeProbabilisticStrategy : public ByzantineStrategy {
 public:
  std::string id() const override { return "opposite_probabilistic"; }
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;
};

// Per (voter, pair), a fair coin picks good behavior or the deterministic
// opposite vote.
class RandomSubsetStrategy : public ByzantineStrategy {
 public:
  std::string id() const override { return "random_subset"; }
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;
};

// Each Byzantine voter fixes one corrupted permutation: the reverse of the
// true-weight order with num_swaps random transpositions applied, then votes
// by it everywhere.
class OppositeRandomFlipsStrategy : public ByzantineStrategy {
 public:
  explicit OppositeRandomFlipsStrategy(int num_swaps = 2);
  std::string id() const override { return "opposite_random_flips"; }
  void prepare(const AdversaryContext& ctx, const std::vector<int>& byzantine_ids,
               std::uint64_t seed) override;
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;
  int num_swaps() const { return num_swaps_; }

 private:
  int num_swaps_;
  std::unordered_map<int, std::vector<int>> position_by_voter_;
};

// Votes like a good voter whose weights are a stand-in vector. Exists for the
// indistinguishability construction and as the template for custom
// strategies; it draws through good_first_wins so its coin matches a genuine
// good voter's bit for bit.
class BtlProxyStrategy : public ByzantineStrategy {
 public:
  explicit BtlProxyStrategy(WeightVector proxy);
  std::string id() const override { return "btl_proxy"; }
  bool first_wins(const AdversaryContext& ctx, int voter, int a, int b,
                  SeedStream& stream) const override;

 private:
  WeightVector proxy_;
};

// Factory over the shipped strategy ids; unknown id is a parameter error.
std::shared_ptr<ByzantineStrategy> make_strategy(const std::string& id, int orf_num_swaps = 2);

// K voters, the first F of which are Byzantine by default (explicit ids for
// constructions that place them elsewhere).
class VoterPopulation {
 public:
  VoterPopulation(int total, int byzantine_count, std::shared_ptr<ByzantineStrategy> strategy,
                  std::uint64_t vote_seed);
  VoterPopulation(int total, std::vector<int> byzantine_ids,
                  std::shared_ptr<ByzantineStrategy> strategy, std::uint64_t vote_seed);

  int total() const { return total_; }
  int byzantine_count() const { return static_cast<int>(byzantine_ids_.size()); }
  const std::vector<int>& byzantine_ids() const { return byzantine_ids_; }
  bool is_byzantine(int voter) const { return byzantine_flag_[static_cast<std::size_t>(voter)] != 0; }
  ByzantineStrategy* strategy() const { return strategy_.get(); }
  std::uint64_t vote_seed() const { return vote_seed_; }

 private:
  int total_;
  std::vector<int> byzantine_ids_;
  std::vector<std::uint8_t> byzantine_flag_;
  std::shared_ptr<ByzantineStrategy> strategy_;
  std::uint64_t vote_seed_;
};

enum class AssignMode { per_edge, per_object, per_bucket };

// Unit skeletons: object, bucket, neighbors, and voter sample filled in;
// votes still empty.
struct Assignment {
  AssignMode mode = AssignMode::per_edge;
  std::vector<VoteUnit> units;
};

// Draws the voter sample for every unit, uniformly without replacement from
// [0, total_voters). per_edge: one k-sample per edge, shared by the two
// endpoint units. per_object: one unit covering all of N(i). per_bucket: a
// fresh sample per (object, near-equal contiguous bucket of N(i));
// max_bucket_size 0 picks ceil(log2 n). The mapping is fixed before any vote
// is revealed.
Assignment assign_voters(const ComparisonGraph& g, int total_voters, int k, AssignMode mode,
                         std::uint64_t seed, int max_bucket_size = 0);

// Casts every vote in the assignment: good voters first, then Byzantine ones
// with the good votes visible in their context.
VoteLedger collect_votes(const ComparisonGraph& g, const WeightVector& w,
                         const VoterPopulation& pop, Assignment assignment);

// Splits values into ceil(size / max_size) contiguous runs whose lengths
// differ by at most one.
std::vector<std::vector<int>> split_into_buckets(const std::vector<int>& values,
                                                 int max_size);

}  // namespace byzrank

#endif  // BYZRANK_VOTING_HPP_
