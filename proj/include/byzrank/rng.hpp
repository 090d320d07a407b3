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

#ifndef BYZRANK_RNG_HPP_
#define BYZRANK_RNG_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

// Seeded randomness for the whole library. Everything downstream needs two
// guarantees that std::mt19937 + std::distributions cannot give portably:
//   1. bit-stable output across platforms and standard libraries, and
//   2. cheap derivation of independent streams from structured keys, so a
//      vote can be a pure function of (seed, voter, pair).
// SplitMix64 provides both: it is a strong 64-bit mixer, and its finalizer
// doubles as the derivation hash.

namespace byzrank {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Order-sensitive combine: mix_seed(a, b) != mix_seed(b, a) in general.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  return splitmix64_next(s);
}

// Folds any number of integer key parts into one derived seed.
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t root, Parts... parts) {
  ((root = mix_seed(root, static_cast<std::uint64_t>(parts))), ...);
  return root;
}

// FNV-1a, used to hash string ids (strategy names) into seed keys.
inline std::uint64_t hash_label(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (; *s != '\0'; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001b3ull;
  }
  return h;
}

class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform on [0, 1), 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform on [0, bound); rejection keeps it exactly uniform. bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates; every permutation equally likely.
inline void shuffle(std::vector<int>& v, SeedStream& stream) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(stream.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

inline std::vector<int> random_permutation(int n, SeedStream& stream) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  shuffle(v, stream);
  return v;
}

// Uniform k-subset of {0, ..., total-1}, returned sorted ascending.
// Floyd's algorithm: O(k) draws, no O(total) scratch.
inline std::vector<int> sample_without_replacement(int k, int total, SeedStream& stream) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  if (k >= total) {
    out.resize(static_cast<std::size_t>(total));
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  for (int j = total - k; j < total; ++j) {
    int t = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(j) + 1));
    auto it = std::lower_bound(out.begin(), out.end(), t);
    if (it != out.end() && *it == t) {
      // t already chosen; j itself cannot be (previous rounds drew below j).
      out.insert(std::lower_bound(out.begin(), out.end(), j), j);
    } else {
      out.insert(it, t);
    }
  }
  return out;
}

}  // namespace byzrank

#endif  // BYZRANK_RNG_HPP_
