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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "brip/common.hpp"
#include "brip/rng.hpp"
#include "brip/smallbias.hpp"

using brip::BitVector;
using brip::capacity_error;
namespace sb = brip::smallbias;

namespace {

// bias equality check across different power-of-two denominators
bool rational_eq(std::uint64_t n1, std::uint64_t d1, std::uint64_t n2, std::uint64_t d2) {
  return static_cast<unsigned __int128>(n1) * d2 == static_cast<unsigned __int128>(n2) * d1;
}

bool rational_le(std::uint64_t n1, std::uint64_t d1, std::uint64_t n2, std::uint64_t d2) {
  return static_cast<unsigned __int128>(n1) * d2 <= static_cast<unsigned __int128>(n2) * d1;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1) out.push_back(i + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("choose_degree: frozen values") {
  CHECK(sb::choose_degree(8, 3) == 6);
  CHECK(sb::choose_degree(1, 0) == 2);          // clamp
  CHECK(sb::choose_degree(1345, 658) == 669);   // ceil(log2 1345) + 658
  CHECK(sb::choose_degree(1024, 0) == 10);
  CHECK(sb::choose_degree(1025, 0) == 11);
}

TEST_CASE("spec construction: capacity and bound validation") {
  CHECK_THROWS_AS(sb::make_powering_spec(1345, 658), capacity_error);
  CHECK_THROWS_AS(sb::make_powering_spec_with_degree(8, 3), std::invalid_argument);  // 8/8 = 1
  const auto spec = sb::make_powering_spec(8, 3);
  CHECK(spec.r == 6);
  CHECK(spec.seed_bits() == 12);
}

TEST_CASE("generate: zero y gives the all-zero output") {
  const auto spec = sb::make_powering_spec_with_degree(8, 5);
  const auto bits = sb::generate(spec, {0b10110, 5}, {0, 5});
  for (int i = 0; i < 8; ++i) CHECK_FALSE(bits.get(static_cast<std::size_t>(i)));
}

TEST_CASE("generate: x = 1 repeats bit 0 of y") {
  const auto spec = sb::make_powering_spec_with_degree(6, 4);
  for (std::uint64_t y : {0b0001ull, 0b0110ull, 0b1011ull}) {
    const auto bits = sb::generate(spec, {1, 4}, {y, 4});
    for (int i = 0; i < 6; ++i) CHECK(bits.get(static_cast<std::size_t>(i)) == (y & 1));
  }
}

TEST_CASE("generate: hand-reduced r=3 example") {
  // x = 0b010, y = 0b001: powers x^1=010, x^2=100, x^3=011, x^4=110,
  // bit i reads bit 0 of x^i against y -> (0, 0, 1, 0).
  const sb::PoweringSpec spec{4, 3, {3, 0b1011}};
  const auto bits = sb::generate(spec, {0b010, 3}, {0b001, 3});
  CHECK_FALSE(bits.get(0));
  CHECK_FALSE(bits.get(1));
  CHECK(bits.get(2));
  CHECK_FALSE(bits.get(3));

  // The packed-seed entry point agrees: x in bits [0,3), y in [3,6).
  BitVector seed(6);
  seed.set(1, true);  // x = 0b010
  seed.set(3, true);  // y = 0b001
  CHECK(sb::generate(spec, seed) == bits);
}

TEST_CASE("generate is a pure function of (spec, seed)") {
  const auto spec = sb::make_powering_spec(10, 4);
  brip::rng::Counter stream(0x5eed0e40);
  for (int rep = 0; rep < 10; ++rep) {
    const BitVector seed = stream.next_bits(static_cast<std::size_t>(spec.seed_bits()));
    CHECK(sb::generate(spec, seed) == sb::generate(spec, seed));
  }
}

TEST_CASE("bias_rootcount: singletons have bias exactly 2^-r") {
  for (int r : {4, 6}) {
    const auto spec = sb::make_powering_spec_with_degree(8, r);
    for (int i = 1; i <= 8; ++i) {
      const auto bias = sb::bias_rootcount(spec, {i});
      CHECK(bias.num == 1);  // only root of X^i is x = 0
      CHECK(bias.den == (1ull << r));
    }
  }
}

TEST_CASE("bias_rootcount: {1,2} counts the roots of X + X^2") {
  const auto spec = sb::make_powering_spec_with_degree(8, 6);
  const auto bias = sb::bias_rootcount(spec, {1, 2});
  CHECK(bias.num == 2);  // X + X^2 = X(X+1): roots 0 and 1
  CHECK(bias.den == 64);
}

TEST_CASE("bias_rootcount: degree bound caps every parity set") {
  const auto spec = sb::make_powering_spec_with_degree(10, 7);
  brip::rng::Counter stream(0x5eedb1a5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> set;
    for (int i = 1; i <= 10; ++i) {
      if (stream.next_u64() & 1) set.push_back(i);
    }
    if (set.empty()) set.push_back(1);
    const auto bias = sb::bias_rootcount(spec, set);
    CHECK(rational_le(bias.num, bias.den, 10, 128));  // <= n_bits / 2^r
  }
}

TEST_CASE("bias_rootcount input validation") {
  const auto spec = sb::make_powering_spec_with_degree(8, 6);
  CHECK_THROWS_AS(sb::bias_rootcount(spec, {}), std::invalid_argument);
  CHECK_THROWS_AS(sb::bias_rootcount(spec, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(sb::bias_rootcount(spec, {9}), std::invalid_argument);
}

TEST_CASE("exhaustive audit matches root counting on every parity set") {
  const auto spec = sb::make_powering_spec_with_degree(8, 6);
  const auto report = sb::audit_bias_exhaustive(sb::view(spec), 8);
  CHECK(report.n_bits == 8);
  CHECK(report.seed_bits == 12);
  CHECK(report.max_bias_den == 4096);
  CHECK(report.per_set.size() == 255);

  for (const auto& [mask, sum] : report.per_set) {
    const auto oracle = sb::bias_rootcount(spec, mask_to_set(mask));
    const std::uint64_t abs_sum = static_cast<std::uint64_t>(sum < 0 ? -sum : sum);
    CHECK(rational_eq(abs_sum, report.max_bias_den, oracle.num, oracle.den));
  }
  // max bias <= 8/64 and the singleton value is exactly 1/64
  CHECK(rational_le(report.max_bias_num, report.max_bias_den, 8, 64));
  CHECK(rational_eq(static_cast<std::uint64_t>(report.per_set[0].second), 4096, 1, 64));
}

TEST_CASE("uniform stub has exactly zero bias everywhere") {
  const auto report = sb::audit_bias_exhaustive(sb::uniform_stub(4), 4);
  CHECK(report.max_bias_num == 0);
  for (const auto& [mask, sum] : report.per_set) CHECK(sum == 0);
}

TEST_CASE("audit results are identical for any worker count") {
  const auto spec = sb::make_powering_spec_with_degree(6, 5);
  brip::set_max_threads(1);
  const auto one = sb::audit_bias_exhaustive(sb::view(spec), 6);
  brip::set_max_threads(3);
  const auto three = sb::audit_bias_exhaustive(sb::view(spec), 6);
  brip::set_max_threads(0);
  CHECK(one.max_bias_num == three.max_bias_num);
  CHECK(one.argmax_set == three.argmax_set);
  CHECK(one.per_set == three.per_set);
}

TEST_CASE("audit capacity guards") {
  CHECK_THROWS_AS(sb::audit_bias_exhaustive(sb::view(sb::make_powering_spec_with_degree(8, 14)), 2),
                  capacity_error);
  CHECK_THROWS_AS(sb::audit_bias_exhaustive(sb::uniform_stub(25), 2), capacity_error);
  CHECK_THROWS_AS(sb::audit_bias_exhaustive(sb::uniform_stub(4), 5), std::invalid_argument);
}

TEST_CASE("argmax set realizes the reported max bias") {
  const auto spec = sb::make_powering_spec_with_degree(8, 4);
  const auto report = sb::audit_bias_exhaustive(sb::view(spec), 8);
  const auto oracle = sb::bias_rootcount(spec, report.argmax_set);
  CHECK(rational_eq(report.max_bias_num, report.max_bias_den, oracle.num, oracle.den));
}
