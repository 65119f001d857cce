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

#include "brip/gf2.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace brip::gf2 {

namespace {

void check_degree_range(int r) {
  if (r < kMinDegree || r > kMaxDegree) {
    throw std::invalid_argument("gf2: field degree " + std::to_string(r) +
                                " outside supported range [2, 63]");
  }
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FieldElement make_element(std::uint64_t value, int degree) {
  check_degree_range(degree);
  if (degree < 64 && (value >> degree) != 0) {
    throw std::invalid_argument("gf2: element value does not fit degree " +
                                std::to_string(degree));
  }
  return FieldElement{value, degree};
}

int poly_degree(std::uint64_t bits) {
  return bits == 0 ? -1 : 63 - std::countl_zero(bits);
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("gf2: modulus is zero");
  const int dm = poly_degree(m);
  int da = poly_degree(a);
  while (da >= dm) {
    a ^= m << (da - dm);
    da = poly_degree(a);
  }
  return a;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b, std::uint64_t poly, int r) {
  // Shift-and-add with reduction on the fly; everything stays below bit r.
  const std::uint64_t top = 1ull << (r - 1);
  const std::uint64_t mask = (1ull << r) - 1;
  const std::uint64_t low_poly = poly & mask;  // x^r == low_poly (mod poly)
  std::uint64_t res = 0;
  while (b != 0) {
    if (b & 1) res ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= low_poly;
  }
  return res;
}

bool is_irreducible(std::uint64_t poly_bits, int r) {
  if (r < 1 || poly_degree(poly_bits) != r) return false;
  if (r == 1) return true;  // x and x+1
  if ((poly_bits & 1) == 0) return false;  // divisible by x
  // Rabin: x^{2^r} == x (mod f) and gcd(x^{2^{r/p}} - x, f) == 1 for each
  // prime p | r.
  std::vector<std::uint64_t> chain(static_cast<std::size_t>(r) + 1);
  std::uint64_t s = 0b10;  // x
  chain[0] = s;
  for (int i = 1; i <= r; ++i) {
    s = mul_bits(s, s, poly_bits, r);
    chain[static_cast<std::size_t>(i)] = s;
  }
  if (chain[static_cast<std::size_t>(r)] != 0b10) return false;
  for (int p : prime_divisors(r)) {
    const std::uint64_t diff = chain[static_cast<std::size_t>(r / p)] ^ 0b10;
    if (poly_gcd(diff, poly_bits) != 1) return false;
  }
  return true;
}

ReductionPolynomial find_irreducible(int r) {
  check_degree_range(r);
  // Deterministic result, so racing initializers write the same value.
  static std::array<std::atomic<std::uint64_t>, kMaxDegree + 1> cache{};
  std::uint64_t hit = cache[static_cast<std::size_t>(r)].load(std::memory_order_relaxed);
  if (hit != 0) return ReductionPolynomial{r, hit};

  const std::uint64_t lead = 1ull << r;
  for (std::uint64_t low = 1; low < lead; low += 2) {  // constant term must be 1
    const std::uint64_t cand = lead | low;
    if (std::popcount(cand) % 2 == 0) continue;  // f(1) == 0 => (x+1) | f
    if (is_irreducible(cand, r)) {
      cache[static_cast<std::size_t>(r)].store(cand, std::memory_order_relaxed);
      return ReductionPolynomial{r, cand};
    }
  }
  throw std::logic_error("gf2: no irreducible polynomial found (unreachable)");
}

FieldElement mul(FieldElement a, FieldElement b, const ReductionPolynomial& p) {
  if (a.degree != b.degree || a.degree != p.degree) {
    throw std::invalid_argument("gf2: mismatched degrees in mul");
  }
  check_degree_range(p.degree);
  return FieldElement{mul_bits(a.value, b.value, p.bits, p.degree), p.degree};
}

FieldElement pow(FieldElement a, std::uint64_t e, const ReductionPolynomial& p) {
  if (a.degree != p.degree) {
    throw std::invalid_argument("gf2: mismatched degrees in pow");
  }
  FieldElement result{1, p.degree};
  FieldElement base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return result;
}

}  // namespace brip::gf2
