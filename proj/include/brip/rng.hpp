// Copyright 2026 The brip Authors.
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

#ifndef BRIP_RNG_HPP
#define BRIP_RNG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "brip/bitvec.hpp"

// Harness-side randomness: a counter-indexed splitmix64 stream. This drives
// experiment drivers (trial seeds, random test instances, the
// independent-entry baseline) and is deliberately OUTSIDE the randomness
// budget the construction itself is accounted against.

namespace brip::rng {

/// splitmix64 finalizer: full-avalanche 64-bit mixing.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream key for sub-experiment `index` of a master seed. Pure function of
/// (master, index), so trials can be partitioned across workers freely.
inline std::uint64_t derive_key(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x632BE59BD9B4E019ull));
}

/// Deterministic counter-based stream.
class Counter {
 public:
  explicit Counter(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0,1]: 53 mantissa bits, never exactly zero.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (second variate cached).
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [0, bound); bound > 0. Rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ull / bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  BitVector next_bits(std::size_t n_bits) {
    BitVector out(n_bits);
    for (std::size_t i = 0; i < n_bits; i += 64) {
      std::uint64_t w = next_u64();
      const std::size_t take = std::min<std::size_t>(64, n_bits - i);
      for (std::size_t j = 0; j < take; ++j) out.set(i + j, (w >> j) & 1);
    }
    return out;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace brip::rng

#endif  // BRIP_RNG_HPP
