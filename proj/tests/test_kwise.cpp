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
#include <stdexcept>
#include <vector>

#include "brip/common.hpp"
#include "brip/kwise.hpp"
#include "brip/rng.hpp"

using brip::BitVector;
using brip::capacity_error;
namespace kw = brip::kwise;
namespace sb = brip::smallbias;

namespace {

bool rational_le(std::uint64_t n1, std::uint64_t d1, std::uint64_t n2, std::uint64_t d2) {
  return static_cast<unsigned __int128>(n1) * d2 <= static_cast<unsigned __int128>(n2) * d1;
}

}  // namespace

TEST_CASE("ceil_log2 exact integer behavior") {
  CHECK(kw::ceil_log2(1) == 0);
  CHECK(kw::ceil_log2(2) == 1);
  CHECK(kw::ceil_log2(3) == 2);
  CHECK(kw::ceil_log2(1024) == 10);
  CHECK(kw::ceil_log2(1025) == 11);
  CHECK(kw::ceil_log2(2544640) == 22);
}

TEST_CASE("seed_length_bits: frozen values") {
  CHECK(kw::seed_length_bits(1 << 20, 4, 512, kw::Mode::direct) == 1064);
  CHECK(kw::seed_length_bits(1 << 20, 128, 512, kw::Mode::composed) == 1046);
  CHECK(kw::seed_length_bits(1, 2, 0, kw::Mode::direct) == 4);  // r >= 2 clamp
}

TEST_CASE("make_spec matches seed_length_bits and records the layout") {
  for (int n : {5, 12, 100, 768}) {
    for (int limit : {2, 4, 8}) {
      for (int eps : {2, 5, 9}) {
        const auto spec = kw::make_spec(kw::Mode::composed, n, limit, eps);
        CHECK(spec.seed_bits == kw::seed_length_bits(n, limit, eps, kw::Mode::composed));
        CHECK(spec.t == kw::ceil_log2(static_cast<long long>(n) + 1));
        CHECK(spec.m == 1 + limit / 2 * spec.t);
        CHECK(spec.inner.n_bits == spec.m);
        const auto direct = kw::make_spec(kw::Mode::direct, n, limit, eps);
        CHECK(direct.seed_bits == kw::seed_length_bits(n, limit, eps, kw::Mode::direct));
        CHECK(direct.inner.n_bits == n);
        CHECK(direct.t == 0);
        CHECK(direct.m == 0);
      }
    }
  }
}

TEST_CASE("make_spec argument validation") {
  CHECK_THROWS_AS(kw::make_spec(kw::Mode::composed, 12, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(kw::make_spec(kw::Mode::composed, 0, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(kw::make_spec(kw::Mode::direct, 8, 2, -1), std::invalid_argument);
}

TEST_CASE("embedding rows for n=4, parity 2: constant bit plus the index encoding") {
  const auto emb = kw::build_embedding(4, 2);
  CHECK(emb.m == 4);  // t = 3, m = 1 + 3
  CHECK(emb.stride == 1);
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t row = emb.row(i)[0];
    CHECK((row & 1) == 1);                                  // constant seed bit
    CHECK((row >> 1) == static_cast<std::uint64_t>(i + 1)); // bits of alpha_i
  }
  const auto check = kw::verify_embedding_rank(emb, 2);
  CHECK(check.ok);
}

TEST_CASE("embedding rank holds for every subset of size <= 4 at n=12") {
  const auto emb = kw::build_embedding(12, 4);
  const auto check = kw::verify_embedding_rank(emb, 4);
  CHECK(check.ok);
  CHECK(check.witness.empty());
}

TEST_CASE("a duplicated row is caught with the pair as witness") {
  auto emb = kw::build_embedding(6, 4);
  for (int w = 0; w < emb.stride; ++w) {
    emb.rows[static_cast<std::size_t>(4 * emb.stride + w)] =
        emb.rows[static_cast<std::size_t>(2 * emb.stride + w)];
  }
  const auto check = kw::verify_embedding_rank(emb, 4);
  CHECK_FALSE(check.ok);
  CHECK(check.witness == std::vector<int>{3, 5});  // 1-based indices
}

TEST_CASE("rank check capacity guard") {
  const auto emb = kw::build_embedding(4096, 4);
  CHECK_THROWS_AS(kw::verify_embedding_rank(emb, 4), capacity_error);
}

TEST_CASE("direct-mode signs match the powering example") {
  // n=4 with log2_inv_eps=1 picks r=3; seed = (x=0b010, y=0b001).
  const auto spec = kw::make_spec(kw::Mode::direct, 4, 4, 1);
  REQUIRE(spec.inner.r == 3);
  BitVector seed(6);
  seed.set(1, true);
  seed.set(3, true);
  const auto signs = kw::generate(spec, seed);
  CHECK(signs.sign(0) == 1);
  CHECK(signs.sign(1) == 1);
  CHECK(signs.sign(2) == -1);
  CHECK(signs.sign(3) == 1);
}

TEST_CASE("composed mode with zero inner y yields all +1 signs") {
  const auto spec = kw::make_spec(kw::Mode::composed, 12, 4, 3);
  BitVector seed(static_cast<std::size_t>(spec.seed_bits));
  // set only x bits (the low half); y stays zero so every inner bit is zero
  seed.set(0, true);
  seed.set(2, true);
  const auto signs = kw::generate(spec, seed);
  for (int i = 0; i < 12; ++i) CHECK(signs.sign(static_cast<std::size_t>(i)) == 1);
}

TEST_CASE("generation is deterministic across instances and calls") {
  const auto spec = kw::make_spec(kw::Mode::composed, 50, 6, 4);
  brip::rng::Counter stream(0x5eedc0de);
  const BitVector seed = stream.next_bits(static_cast<std::size_t>(spec.seed_bits));
  const kw::Generator g1(spec);
  const kw::Generator g2(spec);
  CHECK(g1.generate(seed) == g2.generate(seed));
  CHECK(g1.generate(seed) == kw::generate(spec, seed));
}

TEST_CASE("generation is identical for any worker count") {
  const auto spec = kw::make_spec(kw::Mode::composed, 300, 8, 5);
  brip::rng::Counter stream(0x5eedc0df);
  const BitVector seed = stream.next_bits(static_cast<std::size_t>(spec.seed_bits));
  brip::set_max_threads(1);
  const auto one = kw::generate(spec, seed);
  brip::set_max_threads(8);
  const auto eight = kw::generate(spec, seed);
  brip::set_max_threads(0);
  CHECK(one == eight);
}

TEST_CASE("wrong seed length is rejected") {
  const auto spec = kw::make_spec(kw::Mode::composed, 12, 4, 3);
  CHECK_THROWS_AS(kw::generate(spec, BitVector(static_cast<std::size_t>(spec.seed_bits - 1))),
                  std::invalid_argument);
}

TEST_CASE("sign map round trip is the identity") {
  brip::rng::Counter stream(0x5eed51f7);
  const BitVector bits = stream.next_bits(97);
  const kw::SignVector signs(bits);
  BitVector rebuilt(97);
  for (std::size_t i = 0; i < 97; ++i) rebuilt.set(i, signs.sign(i) == -1);
  CHECK(rebuilt == bits);
}

TEST_CASE("composition soundness: audited bias never exceeds the inner bound") {
  // Every <=limit output parity pulls back to a nonempty inner parity, so the
  // audited max must sit below m / 2^r.
  const auto spec = kw::make_spec(kw::Mode::composed, 6, 2, 2);
  const kw::Generator gen(spec);
  const auto view = gen.bit_view();
  const auto report = sb::audit_bias_exhaustive(view, 2);
  CHECK(report.bound_num == static_cast<std::uint64_t>(spec.m));
  CHECK(report.bound_den == (1ull << spec.inner.r));
  CHECK(rational_le(report.max_bias_num, report.max_bias_den, report.bound_num,
                    report.bound_den));
}

TEST_CASE("direct mode: audited bias over all sizes never exceeds n/2^r") {
  const auto spec = kw::make_spec(kw::Mode::direct, 7, 7, 2);
  const auto report = sb::audit_bias_exhaustive(kw::Generator(spec).bit_view(), 7);
  CHECK(rational_le(report.max_bias_num, report.max_bias_den,
                    static_cast<std::uint64_t>(spec.n_bits), 1ull << spec.inner.r));
}
