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

#include <cstdlib>

#include "byzrank/kernels.hpp"

namespace byzrank::kernels {
namespace {

void accumulate_column_scalar(std::int32_t* u, const std::uint8_t* col, int k,
                              std::int32_t mult) {
  for (int v = 0; v < k; ++v) u[v] += mult * static_cast<std::int32_t>(col[v]);
}

int count_deviant_scalar(const std::int32_t* u, int k, std::int32_t center,
                         std::int32_t threshold) {
  int count = 0;
  for (int v = 0; v < k; ++v) {
    const std::int32_t dev = u[v] >= center ? u[v] - center : center - u[v];
    count += dev >= threshold;
  }
  return count;
}

int mark_deviant_scalar(const std::int32_t* u, int k, std::int32_t center,
                        std::int32_t threshold, std::uint8_t* flags) {
  int count = 0;
  for (int v = 0; v < k; ++v) {
    const std::int32_t dev = u[v] >= center ? u[v] - center : center - u[v];
    if (dev >= threshold) {
      flags[v] = 1;
      ++count;
    }
  }
  return count;
}

const Ops kScalarOps = {accumulate_column_scalar, count_deviant_scalar, mark_deviant_scalar,
                        "scalar"};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& ops() {
  static const Ops& chosen = []() -> const Ops& {
    if (const char* env = std::getenv("BYZRANK_NO_SIMD");
        env != nullptr && env[0] != '\0' && !(env[0] == '0' && env[1] == '\0')) {
      return kScalarOps;
    }
    if (const Ops* simd = avx2_ops()) return *simd;
    return kScalarOps;
  }();
  return chosen;
}

}  // namespace byzrank::kernels
