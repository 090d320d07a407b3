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

// Samples a full-ranking corpus from a choice model: each voter builds their
// ranking top-down, picking the next object with probability proportional to
// its weight among the objects still unranked.

#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "byzrank/errors.hpp"
#include "byzrank/ranking_data.hpp"
#include "byzrank/rng.hpp"
#include "byzrank/weights.hpp"

namespace {

std::vector<int> sample_ranking(const byzrank::WeightVector& w, byzrank::SeedStream& stream) {
  const int n = w.size();
  std::vector<int> remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> ranking;
  ranking.reserve(static_cast<std::size_t>(n));
  double total = w.sum();
  while (!remaining.empty()) {
    const double u = stream.next_double() * total;
    double acc = 0.0;
    std::size_t pick = remaining.size() - 1;  // guards against rounding past the end
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      acc += w[remaining[i]];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    const int chosen = remaining[pick];
    ranking.push_back(chosen);
    total -= w[chosen];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return ranking;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sample a full-ranking corpus from object weights"};
  int objects = 10;
  int voters = 1000;
  std::uint64_t seed = 7;
  std::string weights = "uniform";
  double weight_lo = 1.0;
  double weight_hi = 100.0;
  double skew_b = 10.0;
  std::string out;
  app.add_option("--objects", objects, "objects per ranking")->capture_default_str();
  app.add_option("--voters", voters, "number of rankings")->capture_default_str();
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--weights", weights, "weight generator: uniform or skewed")
      ->check(CLI::IsMember({"uniform", "skewed"}))
      ->capture_default_str();
  app.add_option("--weight-lo", weight_lo, "uniform weight lower bound")->capture_default_str();
  app.add_option("--weight-hi", weight_hi, "uniform weight upper bound")->capture_default_str();
  app.add_option("--b", skew_b, "skewed-weight ratio b")->capture_default_str();
  app.add_option("--out", out, "write the corpus here instead of stdout");

  try {
    app.parse(argc, argv);
    if (objects < 2) throw byzrank::ParameterError("need at least 2 objects");
    if (voters < 1) throw byzrank::ParameterError("need at least 1 voter");
    const byzrank::WeightVector w =
        weights == "skewed" ? byzrank::make_skewed_weights(objects, skew_b)
                            : byzrank::sample_uniform_weights(objects, weight_lo, weight_hi,
                                                              byzrank::derive_seed(seed, 1));
    byzrank::RankingDataset data;
    data.objects = objects;
    data.rankings.reserve(static_cast<std::size_t>(voters));
    for (int v = 0; v < voters; ++v) {
      byzrank::SeedStream stream(byzrank::derive_seed(seed, 2, v));
      data.rankings.push_back(sample_ranking(w, stream));
    }
    if (out.empty()) {
      byzrank::write_rankings(data, std::cout);
    } else {
      std::ofstream f(out);
      if (!f) throw byzrank::IoError("cannot open '" + out + "' for writing");
      byzrank::write_rankings(data, f);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(byzrank::ErrorCategory::parameter);
  } catch (const byzrank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
