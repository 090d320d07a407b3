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

#include "byzrank/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define BYZRANK_HAVE_X86 1
#include <immintrin.h>
#endif

// Per-function target attributes keep this translation unit buildable without
// global -mavx2, so the dispatch guard itself never executes AVX2 code.

namespace byzrank::kernels {

#if defined(BYZRANK_HAVE_X86) && defined(__GNUC__)

namespace {

__attribute__((target("avx2"))) void accumulate_column_avx2(std::int32_t* u,
                                                            const std::uint8_t* col, int k,
                                                            std::int32_t mult) {
  const __m256i vmult = _mm256_set1_epi32(mult);
  int v = 0;
  for (; v + 8 <= k; v += 8) {
    const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(col + v));
    const __m256i wide = _mm256_cvtepu8_epi32(bytes);
    __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + v));
    acc = _mm256_add_epi32(acc, _mm256_mullo_epi32(wide, vmult));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(u + v), acc);
  }
  for (; v < k; ++v) u[v] += mult * static_cast<std::int32_t>(col[v]);
}

// dev >= threshold written as dev > threshold - 1; threshold >= 1 always
// (flag distances are at least 1), so no underflow.
__attribute__((target("avx2"))) int count_deviant_avx2(const std::int32_t* u, int k,
                                                       std::int32_t center,
                                                       std::int32_t threshold) {
  const __m256i vcenter = _mm256_set1_epi32(center);
  const __m256i vbound = _mm256_set1_epi32(threshold - 1);
  __m256i acc = _mm256_setzero_si256();
  int v = 0;
  for (; v + 8 <= k; v += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + v));
    const __m256i dev = _mm256_abs_epi32(_mm256_sub_epi32(x, vcenter));
    acc = _mm256_sub_epi32(acc, _mm256_cmpgt_epi32(dev, vbound));
  }
  __m128i s = _mm_add_epi32(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
  int count = _mm_cvtsi128_si32(s);
  for (; v < k; ++v) {
    const std::int32_t dev = u[v] >= center ? u[v] - center : center - u[v];
    count += dev >= threshold;
  }
  return count;
}

__attribute__((target("avx2"))) int mark_deviant_avx2(const std::int32_t* u, int k,
                                                      std::int32_t center,
                                                      std::int32_t threshold,
                                                      std::uint8_t* flags) {
  const __m256i vcenter = _mm256_set1_epi32(center);
  const __m256i vbound = _mm256_set1_epi32(threshold - 1);
  int count = 0;
  int v = 0;
  for (; v + 8 <= k; v += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + v));
    const __m256i dev = _mm256_abs_epi32(_mm256_sub_epi32(x, vcenter));
    const __m256i hit = _mm256_cmpgt_epi32(dev, vbound);
    int mask = _mm256_movemask_ps(_mm256_castsi256_ps(hit));
    count += __builtin_popcount(static_cast<unsigned>(mask));
    while (mask != 0) {
      const int lane = __builtin_ctz(static_cast<unsigned>(mask));
      flags[v + lane] = 1;
      mask &= mask - 1;
    }
  }
  for (; v < k; ++v) {
    const std::int32_t dev = u[v] >= center ? u[v] - center : center - u[v];
    if (dev >= threshold) {
      flags[v] = 1;
      ++count;
    }
  }
  return count;
}

const Ops kAvx2Ops = {accumulate_column_avx2, count_deviant_avx2, mark_deviant_avx2, "avx2"};

}  // namespace

const Ops* avx2_ops() { return __builtin_cpu_supports("avx2") ? &kAvx2Ops : nullptr; }

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // BYZRANK_HAVE_X86 && __GNUC__

}  // namespace byzrank::kernels
