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

#ifndef BYZRANK_SPECTRAL_HPP_
#define BYZRANK_SPECTRAL_HPP_

#include <iosfwd>
#include <vector>

#include "byzrank/graph.hpp"
#include "byzrank/voting.hpp"
#include "byzrank/weights.hpp"

namespace byzrank {

// Row-stochastic comparison chain. Off-diagonal support equals the graph's
// edge set; entry (i, j) carries A_ij / d_max where A_ij is the surviving
// fraction of votes at i's units saying j beats i, and d_max is the graph
// maximum degree before any voter removal. Every row sums to 1.
struct TransitionMatrix {
  int n = 0;
  int scale_degree = 0;  // the d_max used as normalizer
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> off_diag;
  std::vector<double> diag;
};

struct StationaryOptions {
  double tol = 1e-10;  // L1 change between iterates
  int max_iters = 0;   // 0 picks 100 * n
};

struct StationaryResult {
  std::vector<double> pi;
  int iterations = 0;
  double residual = 0.0;  // final L1 iterate change
};

// Requires every graph edge to hold at least one surviving vote from each
// endpoint's query set; a bare edge is a degenerate-filter error naming it.
TransitionMatrix build_transition(const PairAggregates& agg, const ComparisonGraph& g);

// Plugs exact preference probabilities in as A (no sampling): the fixture
// for fixed-point tests and the dataset ground-truth path.
PairAggregates exact_aggregates(const WeightVector& w, const ComparisonGraph& g);

// Power iteration from the uniform vector, each iterate renormalized to sum
// one. Stops when the L1 change drops to tol; exhausting max_iters is a
// convergence error carrying the residual.
StationaryResult stationary(const TransitionMatrix& P, const StationaryOptions& opts = {});

// build_transition + stationary over a ledger. The graph must be connected.
StationaryResult rank_centrality(const VoteLedger& ledger, const ComparisonGraph& g,
                                 const StationaryOptions& opts = {});

// Debug dump: one "i j P_ij" triplet per stored entry, diagonal included.
void write_transition_triplets(const TransitionMatrix& P, std::ostream& os);

}  // namespace byzrank

#endif  // BYZRANK_SPECTRAL_HPP_
