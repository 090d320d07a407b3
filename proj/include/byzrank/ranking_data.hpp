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

#ifndef BYZRANK_RANKING_DATA_HPP_
#define BYZRANK_RANKING_DATA_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace byzrank {

// A corpus of complete rankings over one object set. Every ranking is a
// permutation of 0..objects-1, most-preferred first.
struct RankingDataset {
  int objects = 0;
  std::vector<std::vector<int>> rankings;

  int voters() const { return static_cast<int>(rankings.size()); }
};

// Native format: one ranking per line, whitespace-separated object ids,
// '#' starts a comment. With order_format set, the first line is skipped as
// a header and the first two tokens of every line are dropped (the .order
// layout: a record id and an item count before the ranking itself).
RankingDataset parse_rankings(std::istream& is, bool order_format,
                              const std::string& origin = "<stream>");
RankingDataset load_rankings(const std::string& path, bool order_format);

void write_rankings(const RankingDataset& data, std::ostream& os);

}  // namespace byzrank

#endif  // BYZRANK_RANKING_DATA_HPP_
