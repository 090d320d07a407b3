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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "byzrank/errors.hpp"
#include "byzrank/voting.hpp"
#include "doctest.h"

using namespace byzrank;

namespace {

AdversaryContext context_for(const WeightVector& w) {
  AdversaryContext ctx;
  ctx.weights = &w;
  return ctx;
}

// Empirical win rate of the canonical pair (0, 1) over independent voters.
double first_win_rate(const ByzantineStrategy& strategy, const WeightVector& w, int draws) {
  const AdversaryContext ctx = context_for(w);
  int wins = 0;
  for (int voter = 0; voter < draws; ++voter) {
    SeedStream stream = vote_stream(900, voter, 0, 1);
    wins += strategy.first_wins(ctx, voter, 0, 1, stream) ? 1 : 0;
  }
  return wins / static_cast<double>(draws);
}

}  // namespace

TEST_CASE("vote_stream is pure and order-canonical") {
  SeedStream a = vote_stream(1, 5, 2, 7);
  SeedStream b = vote_stream(1, 5, 2, 7);
  SeedStream c = vote_stream(1, 5, 7, 2);
  const std::uint64_t va = a.next_u64();
  CHECK(va == b.next_u64());
  CHECK(va == c.next_u64());
  SeedStream other_voter = vote_stream(1, 6, 2, 7);
  SeedStream other_pair = vote_stream(1, 5, 2, 8);
  SeedStream other_seed = vote_stream(2, 5, 2, 7);
  CHECK(va != other_voter.next_u64());
  CHECK(va != other_pair.next_u64());
  CHECK(va != other_seed.next_u64());
}

TEST_CASE("good voters follow the weight-ratio coin") {
  const WeightVector w = make_weights({1.0, 3.0});
  int wins = 0;
  const int draws = 100000;
  for (int voter = 0; voter < draws; ++voter) {
    SeedStream stream = vote_stream(17, voter, 0, 1);
    wins += good_first_wins(w, 0, 1, stream) ? 1 : 0;
  }
  // True rate 0.25, sigma ~0.00137; allow ~4 sigma.
  CHECK(std::abs(wins / static_cast<double>(draws) - 0.25) < 0.006);
}

TEST_CASE("opposite strategy deterministically backs the lighter object") {
  const WeightVector w = make_weights({1.0, 3.0, 2.0});
  const OppositeStrategy opp;
  const AdversaryContext ctx = context_for(w);
  SeedStream stream(0);
  CHECK(opp.first_wins(ctx, 0, 0, 1, stream));        // w0 < w1
  CHECK(opp.first_wins(ctx, 0, 0, 2, stream));        // w0 < w2
  CHECK_FALSE(opp.first_wins(ctx, 0, 1, 2, stream));  // w1 > w2
}

TEST_CASE("opposite_probabilistic flips the good coin") {
  const WeightVector w = make_weights({1.0, 3.0});
  const OppositeProbabilisticStrategy strategy;
  // True rate w1/(w0+w1) = 0.75.
  CHECK(std::abs(first_win_rate(strategy, w, 100000) - 0.75) < 0.006);
}

TEST_CASE("random_subset mixes the good coin and the opposite vote") {
  const WeightVector w = make_weights({1.0, 3.0});
  const RandomSubsetStrategy strategy;
  // Half the pairs vote good (rate 0.25), half vote opposite (rate 1):
  // overall 0.625.
  CHECK(std::abs(first_win_rate(strategy, w, 100000) - 0.625) < 0.007);
}

TEST_CASE("fixed_order with an explicit preference order") {
  FixedOrderStrategy strategy({2, 0, 1});
  const WeightVector w = make_weights({1.0, 1.0, 1.0});
  const AdversaryContext ctx = context_for(w);
  SeedStream stream(0);
  CHECK(strategy.first_wins(ctx, 0, 0, 1, stream));        // 0 ranked above 1
  CHECK_FALSE(strategy.first_wins(ctx, 0, 0, 2, stream));  // 2 ranked first
  CHECK_FALSE(strategy.first_wins(ctx, 0, 1, 2, stream));
  CHECK_THROWS_AS(FixedOrderStrategy({0, 0, 1}), ParameterError);
  CHECK_THROWS_AS(FixedOrderStrategy({0, 3, 1}), ParameterError);
}

TEST_CASE("fixed_order prepare draws one shared order, deterministically") {
  const WeightVector w = make_weights({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const std::vector<int> byz = {0, 1, 2};
  FixedOrderStrategy s1, s2;
  s1.prepare(context_for(w), byz, 77);
  s1.prepare(context_for(w), byz, 77);  // idempotent
  s2.prepare(context_for(w), byz, 77);
  const AdversaryContext ctx = context_for(w);
  // The induced tournament must be one total order shared by all voters:
  // win counts over 6 objects are a permutation of 0..5, identical across
  // instances and voters.
  std::vector<int> wins1(6, 0), wins2(6, 0);
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      SeedStream stream(0);
      const bool r1 = s1.first_wins(ctx, 0, a, b, stream);
      const bool r2 = s2.first_wins(ctx, 1, a, b, stream);
      CHECK(r1 == r2);
      ++(r1 ? wins1[static_cast<std::size_t>(a)] : wins1[static_cast<std::size_t>(b)]);
      ++(r2 ? wins2[static_cast<std::size_t>(a)] : wins2[static_cast<std::size_t>(b)]);
    }
  }
  std::set<int> distinct(wins1.begin(), wins1.end());
  CHECK(distinct.size() == 6);
  CHECK(wins1 == wins2);
  FixedOrderStrategy s3;
  s3.prepare(context_for(w), byz, 78);
  bool any_diff = false;
  for (int a = 0; a < 6 && !any_diff; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      SeedStream stream(0);
      if (s1.first_wins(ctx, 0, a, b, stream) != s3.first_wins(ctx, 0, a, b, stream)) {
        any_diff = true;
        break;
      }
    }
  }
  CHECK(any_diff);
}

TEST_CASE("opposite_random_flips with zero swaps is the exact reverse order") {
  const WeightVector w = make_weights({1.0, 2.0, 3.0, 4.0});
  OppositeRandomFlipsStrategy strategy(0);
  strategy.prepare(context_for(w), {0, 1}, 13);
  const AdversaryContext ctx = context_for(w);
  SeedStream stream(0);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      // Reverse of descending weight puts lower weight first.
      CHECK(strategy.first_wins(ctx, 0, a, b, stream));
      CHECK(strategy.first_wins(ctx, 1, a, b, stream));
    }
  }
  CHECK_THROWS_AS(strategy.first_wins(ctx, 2, 0, 1, stream), ParameterError);
  CHECK_THROWS_AS(OppositeRandomFlipsStrategy(-1), ParameterError);
}

TEST_CASE("opposite_random_flips voters differ but replay deterministically") {
  const WeightVector w = make_weights({1, 2, 3, 4, 5, 6, 7, 8});
  OppositeRandomFlipsStrategy s1(2), s2(2);
  const std::vector<int> byz = {0, 1, 2, 3};
  s1.prepare(context_for(w), byz, 21);
  s2.prepare(context_for(w), byz, 21);
  const AdversaryContext ctx = context_for(w);
  bool voters_differ = false;
  for (int a = 0; a < 8; ++a) {
    for (int b = a + 1; b < 8; ++b) {
      SeedStream stream(0);
      for (int voter : byz) {
        CHECK(s1.first_wins(ctx, voter, a, b, stream) ==
              s2.first_wins(ctx, voter, a, b, stream));
      }
      if (s1.first_wins(ctx, 0, a, b, stream) != s1.first_wins(ctx, 3, a, b, stream)) {
        voters_differ = true;
      }
    }
  }
  CHECK(voters_differ);
}

TEST_CASE("btl_proxy with the true weights is bit-identical to a good voter") {
  const WeightVector w = make_weights({5.0, 1.0, 2.5, 0.5}, true);
  const BtlProxyStrategy proxy(w);
  const AdversaryContext ctx = context_for(w);
  for (int voter = 0; voter < 50; ++voter) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        SeedStream s1 = vote_stream(33, voter, a, b);
        SeedStream s2 = vote_stream(33, voter, a, b);
        CHECK(proxy.first_wins(ctx, voter, a, b, s1) == good_first_wins(w, a, b, s2));
      }
    }
  }
}

TEST_CASE("make_strategy covers the shipped ids") {
  for (const char* id : {"fixed_order", "opposite", "opposite_probabilistic", "random_subset",
                         "opposite_random_flips"}) {
    CHECK(make_strategy(id)->id() == id);
  }
  CHECK_THROWS_AS(make_strategy("clairvoyant"), ParameterError);
}

TEST_CASE("voter population validates its byzantine set") {
  const VoterPopulation prefix(10, 3, make_strategy("opposite"), 1);
  CHECK(prefix.total() == 10);
  CHECK(prefix.byzantine_count() == 3);
  CHECK(prefix.byzantine_ids() == std::vector<int>({0, 1, 2}));
  CHECK(prefix.is_byzantine(0));
  CHECK_FALSE(prefix.is_byzantine(3));

  const VoterPopulation explicit_ids(6, std::vector<int>{5, 2}, make_strategy("opposite"), 1);
  CHECK(explicit_ids.byzantine_ids() == std::vector<int>({2, 5}));
  CHECK(explicit_ids.is_byzantine(5));

  const VoterPopulation all_good(4, 0, nullptr, 1);
  CHECK(all_good.byzantine_count() == 0);

  CHECK_THROWS_AS(VoterPopulation(4, 2, nullptr, 1), ParameterError);
  CHECK_THROWS_AS(VoterPopulation(4, 5, make_strategy("opposite"), 1), ParameterError);
  CHECK_THROWS_AS(VoterPopulation(4, std::vector<int>{1, 1}, make_strategy("opposite"), 1),
                  ParameterError);
  CHECK_THROWS_AS(VoterPopulation(4, std::vector<int>{4}, make_strategy("opposite"), 1),
                  ParameterError);
}

TEST_CASE("split_into_buckets keeps order with near-equal sizes") {
  std::vector<int> values(105);
  std::iota(values.begin(), values.end(), 0);
  const auto buckets = split_into_buckets(values, 8);
  CHECK(buckets.size() == 14);
  std::vector<int> roundtrip;
  int smallest = 105, largest = 0;
  for (const auto& bucket : buckets) {
    smallest = std::min(smallest, static_cast<int>(bucket.size()));
    largest = std::max(largest, static_cast<int>(bucket.size()));
    roundtrip.insert(roundtrip.end(), bucket.begin(), bucket.end());
  }
  CHECK(roundtrip == values);
  CHECK(largest - smallest <= 1);
  CHECK(largest <= 8);

  CHECK(split_into_buckets({}, 4).empty());
  CHECK(split_into_buckets({1, 2}, 4).size() == 1);
  CHECK_THROWS_AS(split_into_buckets({1}, 0), ParameterError);
}

TEST_CASE("per-edge assignment shares one sample across both endpoints") {
  const ComparisonGraph g = complete_graph(4);
  const Assignment assignment = assign_voters(g, 20, 6, AssignMode::per_edge, 5);
  CHECK(assignment.units.size() == 2 * g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const VoteUnit& lo = assignment.units[2 * e];
    const VoteUnit& hi = assignment.units[2 * e + 1];
    CHECK(lo.object == g.edges[e].first);
    CHECK(hi.object == g.edges[e].second);
    CHECK(lo.neighbors == std::vector<int>({hi.object}));
    CHECK(hi.neighbors == std::vector<int>({lo.object}));
    CHECK(lo.voters == hi.voters);
    CHECK(lo.voters.size() == 6);
    CHECK(std::is_sorted(lo.voters.begin(), lo.voters.end()));
  }
  const Assignment again = assign_voters(g, 20, 6, AssignMode::per_edge, 5);
  for (std::size_t u = 0; u < assignment.units.size(); ++u) {
    CHECK(assignment.units[u].voters == again.units[u].voters);
  }
}

TEST_CASE("per-object assignment covers whole neighborhoods and skips isolated objects") {
  const ComparisonGraph g = make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {1, 3}});
  const Assignment assignment = assign_voters(g, 10, 4, AssignMode::per_object, 9);
  REQUIRE(assignment.units.size() == 4);  // object 4 is isolated
  CHECK(assignment.units[0].neighbors == std::vector<int>({1, 2}));
  CHECK(assignment.units[1].neighbors == std::vector<int>({0, 2, 3}));
  CHECK(assignment.units[3].neighbors == std::vector<int>({1}));
  for (const VoteUnit& unit : assignment.units) CHECK(unit.voters.size() == 4);
}

TEST_CASE("per-bucket assignment respects the default log cap") {
  const ComparisonGraph g = complete_graph(40);  // ceil(log2 40) = 6
  const Assignment assignment = assign_voters(g, 50, 10, AssignMode::per_bucket, 3);
  for (const VoteUnit& unit : assignment.units) {
    CHECK(unit.d() <= 6);
    CHECK(unit.voters.size() == 10);
  }
  // 39 neighbors -> ceil(39/6) = 7 buckets per object.
  CHECK(assignment.units.size() == 40 * 7);
  // Distinct buckets draw their own samples: with 50 choose 10 the chance of
  // a collision between the first two buckets is negligible.
  CHECK(assignment.units[0].voters != assignment.units[1].voters);
}

TEST_CASE("byzantine share of unit samples tracks F over K") {
  const ComparisonGraph g = complete_graph(100);
  const Assignment assignment = assign_voters(g, 100, 30, AssignMode::per_object, 77);
  const VoterPopulation pop(100, 30, make_strategy("opposite"), 1);
  int byz = 0, total = 0;
  for (const VoteUnit& unit : assignment.units) {
    for (int voter : unit.voters) {
      byz += pop.is_byzantine(voter) ? 1 : 0;
      ++total;
    }
  }
  CHECK(total == 3000);
  CHECK(std::abs(byz / static_cast<double>(total) - 0.3) < 0.03);
}

TEST_CASE("votes are consistent across units asking the same pair") {
  const ComparisonGraph g = complete_graph(3);
  const WeightVector w = make_weights({1.0, 2.0, 3.0}, true);
  const VoterPopulation pop(8, 2, make_strategy("random_subset"), 4242);
  const VoteLedger ledger =
      collect_votes(g, w, pop, assign_voters(g, 8, 8, AssignMode::per_object, 6));
  REQUIRE(ledger.units.size() == 3);
  // Unit 0 lists neighbors (1, 2); unit 1 lists (0, 2). Same voter, same
  // pair (0, 1): the answers must be complementary.
  const VoteUnit& u0 = ledger.units[0];
  const VoteUnit& u1 = ledger.units[1];
  REQUIRE(u0.voters == u1.voters);  // k = K makes both samples everyone
  for (int v = 0; v < u0.k(); ++v) {
    const int one_beats_zero = u0.beats_focal[static_cast<std::size_t>(v) * u0.d() + 0];
    const int zero_beats_one = u1.beats_focal[static_cast<std::size_t>(v) * u1.d() + 0];
    CHECK(one_beats_zero == 1 - zero_beats_one);
  }
}

TEST_CASE("an all-byzantine opposite electorate inverts every aggregate") {
  const ComparisonGraph g = make_graph(3, {{0, 1}, {1, 2}});
  const WeightVector w = make_weights({1.0, 2.0, 3.0}, true);
  const VoterPopulation pop(5, 5, make_strategy("opposite"), 11);
  const VoteLedger ledger =
      collect_votes(g, w, pop, assign_voters(g, 5, 5, AssignMode::per_object, 12));
  const PairAggregates agg = aggregate_votes(ledger);
  // Opposite always backs the lighter object: the heavier neighbor never
  // beats the lighter focal object.
  CHECK(agg.at(0, 1) == 0.0);  // "1 beats 0" never
  CHECK(agg.at(1, 0) == 1.0);
  CHECK(agg.at(1, 2) == 0.0);
  CHECK(agg.at(2, 1) == 1.0);
  CHECK(agg.votes(0, 1) == 5);
  CHECK(agg.votes(0, 2) == 0);  // no edge, no votes
}

TEST_CASE("good-voter aggregates approach the weight ratios") {
  const ComparisonGraph g = complete_graph(2);
  const WeightVector w = make_weights({1.0, 3.0}, true);
  const VoterPopulation pop(10000, 0, nullptr, 3);
  const VoteLedger ledger =
      collect_votes(g, w, pop, assign_voters(g, 10000, 10000, AssignMode::per_edge, 8));
  const PairAggregates agg = aggregate_votes(ledger);
  CHECK(agg.votes(0, 1) == 10000);
  // P(1 beats 0) = 0.75; sigma ~0.0043.
  CHECK(std::abs(agg.at(0, 1) - 0.75) < 0.02);
  CHECK(agg.at(1, 0) == doctest::Approx(1.0 - agg.at(0, 1)).epsilon(1e-12));
}

TEST_CASE("surviving flags gate the aggregates") {
  const ComparisonGraph g = complete_graph(2);
  const WeightVector w = make_weights({1.0, 1.0}, true);
  const VoterPopulation pop(4, 0, nullptr, 5);
  VoteLedger ledger = collect_votes(g, w, pop, assign_voters(g, 4, 4, AssignMode::per_edge, 5));
  // Zero out all but one voter in unit 0 and check the count follows.
  ledger.units[0].surviving = {1, 0, 0, 0};
  const PairAggregates agg = aggregate_votes(ledger);
  CHECK(agg.votes(0, 1) == 1);
  CHECK(agg.votes(1, 0) == 4);
  const int bit = ledger.units[0].beats_focal[0];
  CHECK(agg.at(0, 1) == static_cast<double>(bit));
}

TEST_CASE("collect_votes validates shapes") {
  const ComparisonGraph g = complete_graph(3);
  const WeightVector w = make_weights({1.0, 2.0}, true);
  const VoterPopulation pop(5, 0, nullptr, 1);
  CHECK_THROWS_AS(collect_votes(g, w, pop, assign_voters(g, 5, 3, AssignMode::per_edge, 2)),
                  ParameterError);
  CHECK_THROWS_AS(assign_voters(g, 5, 6, AssignMode::per_edge, 2), ParameterError);
  CHECK_THROWS_AS(assign_voters(g, 0, 1, AssignMode::per_edge, 2), ParameterError);
}
