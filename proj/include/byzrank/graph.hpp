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

#ifndef BYZRANK_GRAPH_HPP_
#define BYZRANK_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace byzrank {

// Undirected simple graph over objects 0..n-1; the pair structure eligible
// for comparison. Immutable after construction: edges lexicographic with
// first < second, neighbor lists sorted, degree caches filled.
struct ComparisonGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> neighbors;
  std::vector<int> degree;
  int d_max = 0;
  int d_min = 0;

  bool has_edge(int i, int j) const;
};

// Validates and canonicalizes: rejects self-loops, out-of-range endpoints,
// and duplicate pairs.
ComparisonGraph make_graph(int n, std::vector<std::pair<int, int>> edges);

ComparisonGraph complete_graph(int n);

// G(n, p): each of the C(n,2) pairs kept independently with probability p.
// Deterministic in (n, p, seed). Connectivity is the caller's concern.
ComparisonGraph generate_er_graph(int n, double p, std::uint64_t seed);

bool is_connected(const ComparisonGraph& g);

// Text round-trip: "n" on the first line, then one "i j" edge per line,
// 0-indexed, lexicographic. '#' starts a comment.
void write_edge_list(const ComparisonGraph& g, std::ostream& os);
ComparisonGraph read_edge_list(std::istream& is);

}  // namespace byzrank

#endif  // BYZRANK_GRAPH_HPP_
