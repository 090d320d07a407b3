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

#include "byzrank/errors.hpp"
#include "byzrank/weights.hpp"
#include "doctest.h"

using namespace byzrank;

TEST_CASE("skewed weights match hand-computed blocks") {
  const WeightVector two = make_skewed_weights(2, 3.0);
  CHECK(two[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(two[1] == doctest::Approx(0.75).epsilon(1e-15));

  const WeightVector four = make_skewed_weights(4, 2.0);
  CHECK(four[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(four[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(four[2] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(four[3] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));

  const WeightVector three = make_skewed_weights(3, 2.0);
  CHECK(three[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(three[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(three[2] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("mirrored skewed weights reverse the straight vector") {
  for (int n : {2, 3, 4, 7, 10}) {
    const WeightVector straight = make_skewed_weights(n, 5.0);
    const WeightVector mirrored = make_mirrored_skewed_weights(n, 5.0);
    for (int i = 0; i < n; ++i) {
      CHECK(mirrored[i] == doctest::Approx(straight[n - 1 - i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("skewed weights sum to one with skew exactly b") {
  for (int n : {2, 3, 50, 201}) {
    for (double b : {1.5, 10.0, 100.0}) {
      const WeightVector wv = make_skewed_weights(n, b);
      CHECK(std::abs(wv.sum() - 1.0) < 1e-12);
      CHECK(wv.skew() == doctest::Approx(b).epsilon(1e-12));
      CHECK(wv.normalized);
    }
  }
  CHECK_THROWS_AS(make_skewed_weights(1, 2.0), ParameterError);
  CHECK_THROWS_AS(make_skewed_weights(4, 1.0), ParameterError);
}

TEST_CASE("uniform weights are normalized, bounded, deterministic") {
  const WeightVector a = sample_uniform_weights(200, 1.0, 100.0, 5);
  const WeightVector b = sample_uniform_weights(200, 1.0, 100.0, 5);
  const WeightVector c = sample_uniform_weights(200, 1.0, 100.0, 6);
  CHECK(a.w == b.w);
  CHECK(a.w != c.w);
  CHECK(std::abs(a.sum() - 1.0) < 1e-12);
  CHECK(a.skew() <= 100.0);
  for (double v : a.w) CHECK(v > 0.0);
  CHECK_THROWS_AS(sample_uniform_weights(5, 0.0, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(sample_uniform_weights(5, 2.0, 1.0, 1), ParameterError);
}

TEST_CASE("make_weights validates positivity and normalizes on request") {
  const WeightVector raw = make_weights({2.0, 6.0});
  CHECK_FALSE(raw.normalized);
  CHECK(raw.sum() == 8.0);
  const WeightVector norm = make_weights({2.0, 6.0}, true);
  CHECK(norm.normalized);
  CHECK(norm[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(make_weights({1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(make_weights({1.0, -2.0}), ParameterError);
}
