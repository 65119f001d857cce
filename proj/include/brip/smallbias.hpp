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

#ifndef BRIP_SMALLBIAS_HPP
#define BRIP_SMALLBIAS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "brip/bitvec.hpp"
#include "brip/gf2.hpp"

// Small-bias sample space over n bits via the powering construction:
// bit_i = <bits(x^i), bits(y)> over GF(2^r) with seed (x, y), i = 1..n.
// Every nonempty parity of output bits has bias (#roots of the parity
// polynomial) / 2^r <= n / 2^r.

namespace brip::smallbias {

struct PoweringSpec {
  int n_bits = 0;
  int r = 0;
  gf2::ReductionPolynomial poly;

  int seed_bits() const { return 2 * r; }
};

/// Smallest field degree with n_bits / 2^r <= 2^{-log2_inv_eps}, clamped to
/// r >= 2. Pure formula; the value may exceed the 63-bit field cap, in which
/// case constructing a spec for it fails with a capacity error.
int choose_degree(int n_bits, double log2_inv_eps);

/// Spec with the degree chosen for the requested bias exponent.
/// Throws capacity_error (advising composed mode) when the degree would
/// exceed 63.
PoweringSpec make_powering_spec(int n_bits, double log2_inv_eps);

/// Spec with an explicitly chosen degree; requires n_bits < 2^r so the bias
/// bound n_bits / 2^r is nontrivial.
PoweringSpec make_powering_spec_with_degree(int n_bits, int r);

/// Output bit i-1 = <bits(x^i), bits(y)> mod 2 for i = 1..n_bits.
BitVector generate(const PoweringSpec& spec, gf2::FieldElement x, gf2::FieldElement y);

/// Seed layout: bits [0,r) are x, bits [r,2r) are y, little-endian.
BitVector generate(const PoweringSpec& spec, const BitVector& seed);

/// Exact dyadic rational; numerator over a power-of-two denominator,
/// deliberately NOT reduced (audits compare counts, not floats).
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  bool operator==(const Rational&) const = default;
};

/// Exact bias of one parity set (1-based indices, strictly increasing):
/// (#x in GF(2^r) with sum_{i in T} x^i = 0) / 2^r, by full enumeration.
/// Guard: 2^r <= 2^26.
Rational bias_rootcount(const PoweringSpec& spec, const std::vector<int>& parity_set);

/// Type-erased view of any deterministic seed -> bits generator, the common
/// currency of the exhaustive audits and sample-space moment sums.
struct BitGeneratorView {
  int n_bits = 0;
  int seed_bits = 0;
  Rational bias_bound;  // the generator's guarantee for audited parity sizes
  std::function<BitVector(const BitVector& seed)> emit;
};

BitGeneratorView view(const PoweringSpec& spec);

/// Truly uniform n-bit source: the seed is the output. All biases are zero.
BitGeneratorView uniform_stub(int n_bits);

struct BiasAuditReport {
  int n_bits = 0;
  int seed_bits = 0;
  int max_parity_size = 0;
  std::uint64_t max_bias_num = 0;
  std::uint64_t max_bias_den = 1;
  std::vector<int> argmax_set;  // 1-based indices
  std::uint64_t bound_num = 0;
  std::uint64_t bound_den = 1;
  // Exact signed correlation sums per parity set, over max_bias_den seeds.
  // Sets are bitmasks over output indices (bit i-1 <-> index i), listed by
  // size then numeric value.
  std::vector<std::pair<std::uint32_t, std::int64_t>> per_set;
  // max |sum| per parity size (index s-1), the audit histogram.
  std::vector<std::uint64_t> max_abs_sum_by_size;
};

/// Enumerates every seed, accumulates E[prod_{i in T} z_i] for every
/// nonempty T with |T| <= max_parity_size, exactly. Works for any generator.
/// Guards: seed_bits <= 26, n_bits <= 24. Partitioning across workers never
/// changes the result (integer sums).
BiasAuditReport audit_bias_exhaustive(const BitGeneratorView& gen, int max_parity_size);

}  // namespace brip::smallbias

#endif  // BRIP_SMALLBIAS_HPP
