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

#include "byzrank/ranking_data.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "byzrank/errors.hpp"

namespace byzrank {

namespace {

[[noreturn]] void fail(const std::string& origin, int line_no, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

RankingDataset parse_rankings(std::istream& is, bool order_format, const std::string& origin) {
  RankingDataset data;
  std::string line;
  int line_no = 0;
  bool header_skipped = !order_format;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    std::vector<int> ranking;
    if (order_format) {
      // Leading record id and item count carry no ranking information.
      std::string skip;
      if (!(tokens >> skip)) continue;  // blank line
      if (!header_skipped) {
        header_skipped = true;
        continue;
      }
      if (!(tokens >> skip)) fail(origin, line_no, "expected a count token before the ranking");
    }
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        const int id = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        ranking.push_back(id);
      } catch (const std::exception&) {
        fail(origin, line_no, "non-integer token '" + tok + "'");
      }
    }
    if (ranking.empty()) continue;
    if (data.rankings.empty()) {
      data.objects = static_cast<int>(ranking.size());
      if (data.objects < 2) fail(origin, line_no, "rankings need at least 2 objects");
    } else if (static_cast<int>(ranking.size()) != data.objects) {
      fail(origin, line_no,
           "ranking has " + std::to_string(ranking.size()) + " objects, expected " +
               std::to_string(data.objects));
    }
    std::vector<char> seen(static_cast<std::size_t>(data.objects), 0);
    for (int id : ranking) {
      if (id < 0 || id >= data.objects) {
        fail(origin, line_no,
             "object id " + std::to_string(id) + " outside 0.." + std::to_string(data.objects - 1));
      }
      if (seen[static_cast<std::size_t>(id)]) {
        fail(origin, line_no, "duplicate object id " + std::to_string(id));
      }
      seen[static_cast<std::size_t>(id)] = 1;
    }
    data.rankings.push_back(std::move(ranking));
  }
  if (data.rankings.empty()) {
    throw ParseError(origin + ": no rankings found");
  }
  return data;
}

RankingDataset load_rankings(const std::string& path, bool order_format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ranking file '" + path + "'");
  return parse_rankings(in, order_format, path);
}

void write_rankings(const RankingDataset& data, std::ostream& os) {
  for (const auto& ranking : data.rankings) {
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      if (i > 0) os << ' ';
      os << ranking[i];
    }
    os << '\n';
  }
}

}  // namespace byzrank
