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

#include "byzrank/graph.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>

#include "byzrank/errors.hpp"
#include "byzrank/rng.hpp"

namespace byzrank {

bool ComparisonGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) return false;
  const auto& nb = neighbors[static_cast<std::size_t>(i)];
  return std::binary_search(nb.begin(), nb.end(), j);
}

ComparisonGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 1) throw ParameterError("graph needs n >= 1, got n=" + std::to_string(n));
  ComparisonGraph g;
  g.n = n;
  for (auto& [a, b] : edges) {
    if (a == b) throw ParameterError("self-loop at object " + std::to_string(a));
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw ParameterError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                           ") outside 0.." + std::to_string(n - 1));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ParameterError("duplicate edge in edge list");
  }
  g.edges = std::move(edges);
  g.neighbors.assign(static_cast<std::size_t>(n), {});
  for (const auto& [a, b] : g.edges) {
    g.neighbors[static_cast<std::size_t>(a)].push_back(b);
    g.neighbors[static_cast<std::size_t>(b)].push_back(a);
  }
  g.degree.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& nb = g.neighbors[static_cast<std::size_t>(i)];
    std::sort(nb.begin(), nb.end());
    g.degree[static_cast<std::size_t>(i)] = static_cast<int>(nb.size());
  }
  g.d_max = *std::max_element(g.degree.begin(), g.degree.end());
  g.d_min = *std::min_element(g.degree.begin(), g.degree.end());
  return g;
}

ComparisonGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return make_graph(n, std::move(edges));
}

ComparisonGraph generate_er_graph(int n, double p, std::uint64_t seed) {
  if (n < 2) throw ParameterError("ER graph needs n >= 2, got n=" + std::to_string(n));
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError("edge probability must lie in [0,1], got " + std::to_string(p));
  }
  SeedStream stream(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (stream.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return make_graph(n, std::move(edges));
}

bool is_connected(const ComparisonGraph& g) {
  if (g.n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == g.n;
}

void write_edge_list(const ComparisonGraph& g, std::ostream& os) {
  os << g.n << "\n";
  for (const auto& [a, b] : g.edges) os << a << " " << b << "\n";
}

ComparisonGraph read_edge_list(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (ls >> n) continue;
      continue;  // blank or comment before the header
    }
    int a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected two ids");
    }
    edges.emplace_back(a, b);
  }
  if (n < 0) throw ParseError("edge list: missing object-count header line");
  return make_graph(n, std::move(edges));
}

}  // namespace byzrank
