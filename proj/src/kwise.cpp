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

#include "brip/kwise.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "brip/common.hpp"
#include "brip/gf2.hpp"

namespace brip::kwise {

namespace {

void check_spec_args(int n_bits, int parity_limit, int log2_inv_eps, Mode mode) {
  if (n_bits < 1) throw std::invalid_argument("generator spec: n_bits must be >= 1");
  if (log2_inv_eps < 0) throw std::invalid_argument("generator spec: log2_inv_eps must be >= 0");
  if (parity_limit < 1) throw std::invalid_argument("generator spec: parity_limit must be >= 1");
  if (mode == Mode::composed && parity_limit % 2 != 0) {
    throw std::invalid_argument("generator spec: composed mode needs an even parity_limit");
  }
}

// Sum of C(n, j) for 1 <= j <= max_size, saturating at cap+1.
long long subset_count_capped(int n, int max_size, long long cap) {
  long long total = 0;
  long long binom = 1;  // C(n, 0)
  for (int j = 1; j <= max_size && j <= n; ++j) {
    // C(n, j) = C(n, j-1) * (n - j + 1) / j, exact at every step.
    if (binom > cap) return cap + 1;
    binom = binom * (n - j + 1) / j;
    total += binom;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

int ceil_log2(long long n) {
  if (n <= 1) return 0;
  return 64 - std::countl_zero(static_cast<std::uint64_t>(n - 1));
}

long long seed_length_bits(long long n_bits, int parity_limit, int log2_inv_eps, Mode mode) {
  check_spec_args(n_bits > INT32_MAX ? INT32_MAX : static_cast<int>(n_bits), parity_limit,
                  log2_inv_eps, mode);
  long long half = 0;
  if (mode == Mode::direct) {
    half = ceil_log2(n_bits) + log2_inv_eps;
  } else {
    const int t = ceil_log2(n_bits + 1);
    const long long m = 1 + static_cast<long long>(parity_limit / 2) * t;
    half = ceil_log2(m) + log2_inv_eps;
  }
  if (half < 2) half = 2;  // the field degree is clamped to r >= 2
  return 2 * half;
}

GeneratorSpec make_spec(Mode mode, int n_bits, int parity_limit, int log2_inv_eps) {
  check_spec_args(n_bits, parity_limit, log2_inv_eps, mode);
  GeneratorSpec spec;
  spec.mode = mode;
  spec.n_bits = n_bits;
  spec.parity_limit = parity_limit;
  spec.log2_inv_eps = log2_inv_eps;
  if (mode == Mode::direct) {
    spec.inner = smallbias::make_powering_spec(n_bits, log2_inv_eps);
  } else {
    spec.t = ceil_log2(static_cast<long long>(n_bits) + 1);
    const long long m = 1 + static_cast<long long>(parity_limit / 2) * spec.t;
    if (m > INT32_MAX) throw capacity_error("generator spec: embedding seed length overflows");
    spec.m = static_cast<int>(m);
    spec.inner = smallbias::make_powering_spec(spec.m, log2_inv_eps);
  }
  spec.seed_bits = 2 * spec.inner.r;
  return spec;
}

Embedding build_embedding(int n_bits, int parity_limit) {
  if (n_bits < 1) throw std::invalid_argument("embedding: n_bits must be >= 1");
  if (parity_limit < 2 || parity_limit % 2 != 0) {
    throw std::invalid_argument("embedding: parity_limit must be even and >= 2");
  }
  const int t = ceil_log2(static_cast<long long>(n_bits) + 1);
  const int half = parity_limit / 2;
  Embedding emb;
  emb.n_bits = n_bits;
  emb.m = 1 + half * t;
  emb.stride = (emb.m + 63) / 64;
  emb.rows.assign(static_cast<std::size_t>(n_bits) * static_cast<std::size_t>(emb.stride), 0);

  auto set_row_bit = [&](std::size_t row, int pos) {
    emb.rows[row * static_cast<std::size_t>(emb.stride) + static_cast<std::size_t>(pos / 64)] |=
        1ull << (pos % 64);
  };

  if (t < gf2::kMinDegree) {
    // n_bits == 1: the only encoding is a_1 = 1 in GF(2), every odd power 1.
    for (int pos = 0; pos <= half; ++pos) set_row_bit(0, pos == 0 ? 0 : 1 + (pos - 1));
    return emb;
  }

  const gf2::ReductionPolynomial poly = gf2::find_irreducible(t);
  parallel_map_ranges<int>(n_bits, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t idx = begin; idx < end; ++idx) {
      const std::size_t row = static_cast<std::size_t>(idx);
      const gf2::FieldElement alpha{static_cast<std::uint64_t>(idx + 1), t};
      const gf2::FieldElement alpha_sq = gf2::mul(alpha, alpha, poly);
      set_row_bit(row, 0);  // constant seed bit
      gf2::FieldElement power = alpha;  // a^1, then a^3, a^5, ...
      for (int j = 0; j < half; ++j) {
        if (j > 0) power = gf2::mul(power, alpha_sq, poly);
        const int base = 1 + j * t;
        for (int b = 0; b < t; ++b) {
          if ((power.value >> b) & 1) set_row_bit(row, base + b);
        }
      }
    }
    return 0;
  });
  return emb;
}

RankCheckResult verify_embedding_rank(const Embedding& embedding, int parity_limit) {
  const long long kCap = 10'000'000;
  if (parity_limit < 1) throw std::invalid_argument("rank check: parity_limit must be >= 1");
  if (subset_count_capped(embedding.n_bits, parity_limit, kCap) > kCap) {
    throw capacity_error("rank check: too many subsets to enumerate (cap 10^7)");
  }

  const int stride = embedding.stride;
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(parity_limit + 1) *
                                   static_cast<std::size_t>(stride));
  std::vector<int> chosen(static_cast<std::size_t>(parity_limit));

  for (int size = 1; size <= parity_limit && size <= embedding.n_bits; ++size) {
    // Depth-first combination walk with the running XOR kept per depth.
    int depth = 0;
    chosen[0] = 0;
    while (depth >= 0) {
      if (chosen[static_cast<std::size_t>(depth)] > embedding.n_bits - (size - depth)) {
        --depth;
        if (depth >= 0) ++chosen[static_cast<std::size_t>(depth)];
        continue;
      }
      const auto row = embedding.row(chosen[static_cast<std::size_t>(depth)]);
      std::uint64_t* parent = stack.data() + static_cast<std::size_t>(depth) * stride;
      std::uint64_t* cur = parent + stride;
      bool zero = true;
      for (int w = 0; w < stride; ++w) {
        cur[w] = (depth == 0 ? row[static_cast<std::size_t>(w)]
                             : parent[w] ^ row[static_cast<std::size_t>(w)]);
        zero = zero && cur[w] == 0;
      }
      if (depth + 1 == size) {
        if (zero) {
          RankCheckResult fail;
          fail.ok = false;
          for (int d = 0; d <= depth; ++d) fail.witness.push_back(chosen[static_cast<std::size_t>(d)] + 1);
          return fail;
        }
        ++chosen[static_cast<std::size_t>(depth)];
      } else {
        ++depth;
        chosen[static_cast<std::size_t>(depth)] = chosen[static_cast<std::size_t>(depth - 1)] + 1;
      }
    }
  }
  return RankCheckResult{true, {}};
}

Generator::Generator(const GeneratorSpec& spec) : spec_(spec) {
  if (spec_.mode == Mode::composed) {
    embedding_ = build_embedding(spec_.n_bits, spec_.parity_limit);
    if (embedding_.m != spec_.m) {
      throw std::logic_error("generator: embedding width disagrees with spec");
    }
  }
}

SignVector Generator::generate(const BitVector& seed) const {
  if (seed.size() != static_cast<std::size_t>(spec_.seed_bits)) {
    throw std::invalid_argument("generate: seed must be exactly " +
                                std::to_string(spec_.seed_bits) + " bits, got " +
                                std::to_string(seed.size()));
  }
  if (spec_.mode == Mode::direct) {
    return SignVector(smallbias::generate(spec_.inner, seed));
  }

  const BitVector inner_bits = smallbias::generate(spec_.inner, seed);
  std::vector<std::uint64_t> inner_words(static_cast<std::size_t>(embedding_.stride), 0);
  for (std::size_t w = 0; w < inner_words.size(); ++w) inner_words[w] = inner_bits.word(w);

  const int n = spec_.n_bits;
  const std::size_t n_bytes = (static_cast<std::size_t>(n) + 7) / 8;
  std::vector<std::uint8_t> out_bytes(n_bytes, 0);
  // Byte-aligned partitions keep concurrent writers on disjoint bytes.
  parallel_map_ranges<int>(static_cast<std::int64_t>(n_bytes),
                           [&](std::int64_t byte_begin, std::int64_t byte_end) {
                             for (std::int64_t bi = byte_begin; bi < byte_end; ++bi) {
                               std::uint8_t acc = 0;
                               const int lo = static_cast<int>(bi * 8);
                               const int hi = std::min(n, lo + 8);
                               for (int i = lo; i < hi; ++i) {
                                 const auto row = embedding_.row(i);
                                 std::uint64_t par = 0;
                                 for (int w = 0; w < embedding_.stride; ++w) {
                                   par ^= row[static_cast<std::size_t>(w)] & inner_words[static_cast<std::size_t>(w)];
                                 }
                                 acc |= static_cast<std::uint8_t>((std::popcount(par) & 1) << (i - lo));
                               }
                               out_bytes[static_cast<std::size_t>(bi)] = acc;
                             }
                             return 0;
                           });
  return SignVector(BitVector::from_bytes(out_bytes, static_cast<std::size_t>(n)));
}

smallbias::BitGeneratorView Generator::bit_view() const {
  smallbias::BitGeneratorView v;
  v.n_bits = spec_.n_bits;
  v.seed_bits = spec_.seed_bits;
  if (spec_.mode == Mode::direct) {
    v.bias_bound = smallbias::Rational{static_cast<std::uint64_t>(spec_.n_bits),
                                       1ull << spec_.inner.r};
  } else {
    v.bias_bound = smallbias::Rational{static_cast<std::uint64_t>(spec_.m),
                                       1ull << spec_.inner.r};
  }
  // The lambda keeps its own copy; cheap for the desk-scale audit sizes.
  Generator self = *this;
  v.emit = [self = std::move(self)](const BitVector& seed) {
    return self.generate(seed).bits();
  };
  return v;
}

SignVector generate(const GeneratorSpec& spec, const BitVector& seed) {
  return Generator(spec).generate(seed);
}

}  // namespace brip::kwise
