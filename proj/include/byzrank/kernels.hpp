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

#ifndef BYZRANK_KERNELS_HPP_
#define BYZRANK_KERNELS_HPP_

#include <cstdint>

// Inner loops of the sign-vector scan, the hot path of the voter filter:
// every unit runs 2^d incremental passes over k voters. All kernels are
// integer-only, so every variant must produce bit-identical results; the
// equivalence tests enforce that, which keeps output independent of the
// dispatch choice.

namespace byzrank::kernels {

struct Ops {
  // u[v] += mult * col[v]; col entries are 0/1 bytes, mult is +-2 during the
  // scan (sign flip of one coordinate) and -1 for the all-negative start.
  void (*accumulate_column)(std::int32_t* u, const std::uint8_t* col, int k, std::int32_t mult);
  // Number of v with |u[v] - center| >= threshold.
  int (*count_deviant)(const std::int32_t* u, int k, std::int32_t center, std::int32_t threshold);
  // Same predicate; additionally ORs a 1 into flags[v] for each hit.
  int (*mark_deviant)(const std::int32_t* u, int k, std::int32_t center, std::int32_t threshold,
                      std::uint8_t* flags);
  const char* name;
};

// Portable reference implementation.
const Ops& scalar_ops();

// AVX2 implementation, or nullptr when the CPU lacks it.
const Ops* avx2_ops();

// Best available implementation, resolved once per process. Setting the
// environment variable BYZRANK_NO_SIMD to a nonempty value other than "0"
// forces the scalar path.
const Ops& ops();

}  // namespace byzrank::kernels

#endif  // BYZRANK_KERNELS_HPP_
