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

#ifndef BRIP_GF2_HPP
#define BRIP_GF2_HPP

#include <cstdint>

// Arithmetic in GF(2)[x] and GF(2^r), 2 <= r <= 63. Elements are bit words
// (bit i = coefficient of x^i) so everything fits a single 64-bit lane.

namespace brip::gf2 {

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 63;

/// An element of GF(2^r): value < 2^r, bit i = coefficient of x^i.
struct FieldElement {
  std::uint64_t value = 0;
  int degree = 0;

  bool operator==(const FieldElement&) const = default;
};

/// Monic irreducible modulus of degree r; bits span r+1 positions with the
/// leading and constant coefficients set.
struct ReductionPolynomial {
  int degree = 0;
  std::uint64_t bits = 0;

  bool operator==(const ReductionPolynomial&) const = default;
};

/// Validating constructor; throws std::invalid_argument when value has bits
/// at or above position `degree` or the degree is out of range.
FieldElement make_element(std::uint64_t value, int degree);

/// Degree of a GF(2)[x] word, -1 for the zero polynomial.
int poly_degree(std::uint64_t bits);

/// a mod m over GF(2)[x]; m != 0.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m);

/// Monic gcd over GF(2)[x].
std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b);

/// Product in GF(2)[x]/(poly) of words already reduced below degree r.
std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b, std::uint64_t poly, int r);

/// Rabin irreducibility test for a monic degree-r polynomial over GF(2).
bool is_irreducible(std::uint64_t poly_bits, int r);

/// Lexicographically smallest (as an integer) monic irreducible polynomial
/// of degree r. Deterministic, cached per degree, init-safe under
/// concurrent first use. Throws std::invalid_argument outside [2, 63].
ReductionPolynomial find_irreducible(int r);

/// Product in GF(2^r); operands and modulus must share one degree.
FieldElement mul(FieldElement a, FieldElement b, const ReductionPolynomial& p);

/// a^e by square-and-multiply; pow(a, 0) == 1 for every a (empty product).
FieldElement pow(FieldElement a, std::uint64_t e, const ReductionPolynomial& p);

}  // namespace brip::gf2

#endif  // BRIP_GF2_HPP
