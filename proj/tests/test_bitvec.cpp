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

#include <stdexcept>

#include "brip/bitvec.hpp"
#include "brip/rng.hpp"

using brip::BitVector;

TEST_CASE("bit order is little-endian within bytes") {
  BitVector v(10);
  v.set(0, true);
  v.set(9, true);
  CHECK(v.bytes()[0] == 0x01);
  CHECK(v.bytes()[1] == 0x02);
  CHECK(v.low_u64() == 0x201);
}

TEST_CASE("pad bits are validated on from_bytes") {
  CHECK_THROWS_AS(BitVector::from_bytes({0xFF}, 4), std::invalid_argument);
  const BitVector ok = BitVector::from_bytes({0x0F}, 4);
  CHECK(ok.size() == 4);
  CHECK(ok.get(3));
}

TEST_CASE("from_u64 round trip") {
  const BitVector v = BitVector::from_u64(0xABCD, 16);
  CHECK(v.low_u64() == 0xABCD);
  CHECK_THROWS_AS(BitVector::from_u64(0x100, 8), std::invalid_argument);
}

TEST_CASE("word() stitches bytes beyond 64 bits") {
  BitVector v(130);
  v.set(64, true);
  v.set(129, true);
  CHECK(v.word(0) == 0);
  CHECK(v.word(1) == 1);
  CHECK(v.word(2) == 2);
}

TEST_CASE("hex round trip and validation") {
  const std::vector<std::uint8_t> bytes{0x00, 0xAB, 0xFF, 0x07};
  CHECK(brip::to_hex(bytes) == "00abff07");
  CHECK(brip::from_hex("00abff07") == bytes);
  CHECK(brip::from_hex("00ABFF07") == bytes);
  CHECK_THROWS_AS(brip::from_hex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(brip::from_hex("zz"), std::invalid_argument);
}

TEST_CASE("base64 known vectors") {
  CHECK(brip::base64_encode({}) == "");
  CHECK(brip::base64_encode({'f'}) == "Zg==");
  CHECK(brip::base64_encode({'f', 'o'}) == "Zm8=");
  CHECK(brip::base64_encode({'f', 'o', 'o'}) == "Zm9v");
  CHECK(brip::base64_decode("Zm9vYmFy") ==
        std::vector<std::uint8_t>{'f', 'o', 'o', 'b', 'a', 'r'});
  CHECK_THROWS_AS(brip::base64_decode("Zg="), std::invalid_argument);
  CHECK_THROWS_AS(brip::base64_decode("Z!=="), std::invalid_argument);
}

TEST_CASE("base64 round trips random payloads") {
  brip::rng::Counter stream(0x5eedb64);
  for (int len = 0; len < 70; ++len) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len));
    for (auto& b : bytes) b = static_cast<std::uint8_t>(stream.next_u64());
    CHECK(brip::base64_decode(brip::base64_encode(bytes)) == bytes);
  }
}
