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

#ifndef BRIP_KWISE_HPP
#define BRIP_KWISE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "brip/bitvec.hpp"
#include "brip/smallbias.hpp"

// Sign vectors with a guaranteed bias bound on every parity of at most
// parity_limit coordinates. Two modes:
//   direct:   the powering space over all n output bits (bound holds for
//             every parity size, seed 2*(ceil_log2(n) + log2_inv_eps) bits);
//   composed: a BCH-style parity embedding whose m seed bits are themselves
//             drawn from a powering space over m bits, so the true seed is
//             2*(ceil_log2(m) + log2_inv_eps) bits. Any XOR of 1..parity_limit
//             embedding rows is nonzero, which transfers the inner bias bound
//             to every parity of at most parity_limit outputs.

namespace brip::kwise {

enum class Mode { direct, composed };

struct GeneratorSpec {
  Mode mode = Mode::composed;
  int n_bits = 0;
  int parity_limit = 0;   // bias guarantee covers parities up to this size
  int log2_inv_eps = 0;
  int t = 0;              // composed: embedding field degree, 0 for direct
  int m = 0;              // composed: embedding seed length, 0 for direct
  smallbias::PoweringSpec inner;  // over n_bits (direct) or m (composed)
  int seed_bits = 0;
};

/// ceil(log2 n) for n >= 1 (0 for n = 1); exact integer arithmetic.
int ceil_log2(long long n);

/// Seed length in bits per the mode's formula. Pure arithmetic, valid far
/// beyond what can actually be constructed (used by the budget accounting).
long long seed_length_bits(long long n_bits, int parity_limit, int log2_inv_eps, Mode mode);

/// Builds a spec, choosing the inner field degree. Throws capacity_error
/// when the required field degree exceeds 63.
GeneratorSpec make_spec(Mode mode, int n_bits, int parity_limit, int log2_inv_eps);

/// Seed-parity rows of the composed construction, one per output bit:
/// row_i = (1, bits(a_i^1), bits(a_i^3), ..., bits(a_i^{parity_limit-1}))
/// over GF(2^t) with a_i the field encoding of i (1-based, nonzero).
struct Embedding {
  int n_bits = 0;
  int m = 0;       // row width in bits
  int stride = 0;  // 64-bit words per row
  std::vector<std::uint64_t> rows;

  std::span<const std::uint64_t> row(int i) const {  // 0-based
    return {rows.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(stride),
            static_cast<std::size_t>(stride)};
  }
};

Embedding build_embedding(int n_bits, int parity_limit);

struct RankCheckResult {
  bool ok = false;
  std::vector<int> witness;  // 1-based output indices of a dependent subset
};

/// Checks that every XOR of 1..parity_limit distinct rows is nonzero.
/// Guard: sum of C(n_bits, j) over j <= parity_limit must not exceed 10^7.
RankCheckResult verify_embedding_rank(const Embedding& embedding, int parity_limit);

/// Packed sign vector; bit b maps to the sign (-1)^b.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(BitVector bits) : bits_(std::move(bits)) {}

  std::size_t size() const { return bits_.size(); }
  int sign(std::size_t i) const { return bits_.get(i) ? -1 : 1; }
  bool bit(std::size_t i) const { return bits_.get(i); }
  const BitVector& bits() const { return bits_; }

  bool operator==(const SignVector&) const = default;

 private:
  BitVector bits_;
};

/// Generator with the composed-mode embedding rows cached; reuse one
/// instance when sampling many times from the same spec.
class Generator {
 public:
  explicit Generator(const GeneratorSpec& spec);

  const GeneratorSpec& spec() const { return spec_; }
  SignVector generate(const BitVector& seed) const;

  /// Raw-bit view for audits and exact sample-space sums.
  smallbias::BitGeneratorView bit_view() const;

 private:
  GeneratorSpec spec_;
  Embedding embedding_;  // empty in direct mode
};

/// One-shot convenience wrapper around Generator.
SignVector generate(const GeneratorSpec& spec, const BitVector& seed);

}  // namespace brip::kwise

#endif  // BRIP_KWISE_HPP
