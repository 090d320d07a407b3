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

#include "byzrank/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "byzrank/errors.hpp"

namespace byzrank {

TransitionMatrix build_transition(const PairAggregates& agg, const ComparisonGraph& g) {
  if (agg.n != g.n) throw ParameterError("aggregates and graph disagree on n");
  if (g.d_max < 1) throw ParameterError("graph has no edges; the chain is undefined");
  TransitionMatrix P;
  P.n = g.n;
  P.scale_degree = g.d_max;
  P.row_ptr.resize(static_cast<std::size_t>(g.n) + 1, 0);
  std::size_t nnz = 0;
  for (int i = 0; i < g.n; ++i) nnz += g.neighbors[static_cast<std::size_t>(i)].size();
  P.col.reserve(nnz);
  P.off_diag.reserve(nnz);
  P.diag.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    double row_sum = 0.0;
    for (int j : g.neighbors[static_cast<std::size_t>(i)]) {
      if (agg.votes(i, j) <= 0) {
        throw DegenerateFilterError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") has no surviving votes from object " +
                                    std::to_string(i) + "'s query set");
      }
      const double a = agg.at(i, j);
      if (!(a >= 0.0 && a <= 1.0)) {
        throw ParameterError("aggregate A[" + std::to_string(i) + "][" + std::to_string(j) +
                             "] outside [0,1]");
      }
      const double value = a / P.scale_degree;
      P.col.push_back(j);
      P.off_diag.push_back(value);
      row_sum += value;
    }
    P.row_ptr[static_cast<std::size_t>(i) + 1] = static_cast<int>(P.col.size());
    P.diag[static_cast<std::size_t>(i)] = 1.0 - row_sum;  // >= 0: deg(i) <= d_max, A <= 1
  }
  return P;
}

PairAggregates exact_aggregates(const WeightVector& w, const ComparisonGraph& g) {
  if (w.size() != g.n) throw ParameterError("weights and graph disagree on n");
  PairAggregates agg;
  agg.n = g.n;
  const std::size_t cells = static_cast<std::size_t>(g.n) * g.n;
  agg.frac.assign(cells, 0.0);
  agg.count.assign(cells, 0);
  for (const auto& [i, j] : g.edges) {
    // Mass toward the winner: entry (i, j) carries j's win probability.
    agg.frac[static_cast<std::size_t>(i) * g.n + j] = w[j] / (w[i] + w[j]);
    agg.frac[static_cast<std::size_t>(j) * g.n + i] = w[i] / (w[i] + w[j]);
    agg.count[static_cast<std::size_t>(i) * g.n + j] = 1;
    agg.count[static_cast<std::size_t>(j) * g.n + i] = 1;
  }
  return agg;
}

StationaryResult stationary(const TransitionMatrix& P, const StationaryOptions& opts) {
  const int n = P.n;
  if (n < 1) throw ParameterError("empty transition matrix");
  const int max_iters = opts.max_iters > 0 ? opts.max_iters : 100 * n;
  if (!(opts.tol > 0.0)) throw ParameterError("tolerance must be positive");

  // The update is x^T P, i.e. new[i] gathers P[j][i] * x[j] over in-neighbors.
  // The off-diagonal structure is symmetric (graph edges), so row i's
  // neighbor list doubles as the in-neighbor list; transposed values are
  // looked up once here.
  std::vector<double> gather(P.off_diag.size());
  for (int i = 0; i < n; ++i) {
    for (int idx = P.row_ptr[static_cast<std::size_t>(i)];
         idx < P.row_ptr[static_cast<std::size_t>(i) + 1]; ++idx) {
      const int j = P.col[static_cast<std::size_t>(idx)];
      const int lo = P.row_ptr[static_cast<std::size_t>(j)];
      const int hi = P.row_ptr[static_cast<std::size_t>(j) + 1];
      const auto first = P.col.begin() + lo;
      const auto last = P.col.begin() + hi;
      const auto at = std::lower_bound(first, last, i);
      if (at == last || *at != i) {
        throw ParameterError("transition matrix off-diagonal structure is not symmetric");
      }
      gather[static_cast<std::size_t>(idx)] =
          P.off_diag[static_cast<std::size_t>(lo + (at - first))];
    }
  }

  std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> y(static_cast<std::size_t>(n));
  double residual = 0.0;
  for (int iter = 1; iter <= max_iters; ++iter) {
    for (int i = 0; i < n; ++i) {
      double acc = P.diag[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      for (int idx = P.row_ptr[static_cast<std::size_t>(i)];
           idx < P.row_ptr[static_cast<std::size_t>(i) + 1]; ++idx) {
        acc += gather[static_cast<std::size_t>(idx)] *
               x[static_cast<std::size_t>(P.col[static_cast<std::size_t>(idx)])];
      }
      y[static_cast<std::size_t>(i)] = acc;
    }
    double sum = 0.0;
    for (double v : y) sum += v;
    for (double& v : y) v /= sum;
    residual = 0.0;
    for (int i = 0; i < n; ++i) {
      residual += std::abs(y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]);
    }
    x.swap(y);
    if (residual <= opts.tol) {
      StationaryResult result;
      result.pi = std::move(x);
      result.iterations = iter;
      result.residual = residual;
      return result;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail), "power iteration did not reach tol=%g within %d iterations (last L1 change %g)",
                opts.tol, max_iters, residual);
  throw ConvergenceError(detail);
}

StationaryResult rank_centrality(const VoteLedger& ledger, const ComparisonGraph& g,
                                 const StationaryOptions& opts) {
  if (!is_connected(g)) {
    throw ParameterError("comparison graph must be connected for a unique stationary point");
  }
  return stationary(build_transition(aggregate_votes(ledger), g), opts);
}

void write_transition_triplets(const TransitionMatrix& P, std::ostream& os) {
  for (int i = 0; i < P.n; ++i) {
    os << i << " " << i << " " << P.diag[static_cast<std::size_t>(i)] << "\n";
    for (int idx = P.row_ptr[static_cast<std::size_t>(i)];
         idx < P.row_ptr[static_cast<std::size_t>(i) + 1]; ++idx) {
      os << i << " " << P.col[static_cast<std::size_t>(idx)] << " "
         << P.off_diag[static_cast<std::size_t>(idx)] << "\n";
    }
  }
}

}  // namespace byzrank
