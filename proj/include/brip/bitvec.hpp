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

#ifndef BRIP_BITVEC_HPP
#define BRIP_BITVEC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace brip {

/// Packed bit string. Bit i lives in byte i/8 at position i%8
/// (little-endian within bytes); pad bits in the last byte are zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n_bits) : n_(n_bits), bytes_((n_bits + 7) / 8, 0) {}

  /// Wraps raw bytes; throws std::invalid_argument on a size mismatch or a
  /// nonzero pad bit.
  static BitVector from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t n_bits);

  /// Low n_bits of a word, n_bits <= 64.
  static BitVector from_u64(std::uint64_t word, std::size_t n_bits);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  bool get(std::size_t i) const { return (bytes_[i >> 3] >> (i & 7)) & 1; }
  void set(std::size_t i, bool v) {
    const std::uint8_t m = static_cast<std::uint8_t>(1u << (i & 7));
    if (v)
      bytes_[i >> 3] |= m;
    else
      bytes_[i >> 3] &= static_cast<std::uint8_t>(~m);
  }

  /// 64-bit chunk wi (bits [64*wi, 64*wi+64)), zero padded.
  std::uint64_t word(std::size_t wi) const;
  std::size_t word_count() const { return (n_ + 63) / 64; }

  /// Bits [0, min(64, size())) as a word.
  std::uint64_t low_u64() const { return word(0); }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool operator==(const BitVector& o) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bytes_;
};

/// Lowercase hex of the byte payload.
std::string to_hex(const std::vector<std::uint8_t>& bytes);

/// Decodes hex (either case); throws std::invalid_argument on odd length or
/// a non-hex character.
std::vector<std::uint8_t> from_hex(const std::string& hex);

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace brip

#endif  // BRIP_BITVEC_HPP
