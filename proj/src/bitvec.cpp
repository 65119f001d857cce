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

#include "brip/bitvec.hpp"

#include <stdexcept>

namespace brip {

BitVector BitVector::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t n_bits) {
  if (bytes.size() != (n_bits + 7) / 8) {
    throw std::invalid_argument("BitVector: byte count does not match bit length");
  }
  if (n_bits % 8 != 0 && !bytes.empty()) {
    const std::uint8_t pad = static_cast<std::uint8_t>(bytes.back() >> (n_bits % 8));
    if (pad != 0) throw std::invalid_argument("BitVector: nonzero pad bits");
  }
  BitVector out;
  out.n_ = n_bits;
  out.bytes_ = bytes;
  return out;
}

BitVector BitVector::from_u64(std::uint64_t word, std::size_t n_bits) {
  if (n_bits > 64) throw std::invalid_argument("BitVector: from_u64 needs n_bits <= 64");
  if (n_bits < 64 && (word >> n_bits) != 0) {
    throw std::invalid_argument("BitVector: word has bits beyond n_bits");
  }
  BitVector out(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) out.set(i, (word >> i) & 1);
  return out;
}

std::uint64_t BitVector::word(std::size_t wi) const {
  std::uint64_t w = 0;
  const std::size_t base = wi * 8;
  for (std::size_t b = 0; b < 8 && base + b < bytes_.size(); ++b) {
    w |= static_cast<std::uint64_t>(bytes_[base + b]) << (8 * b);
  }
  return w;
}

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kB64Digits[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}
}  // namespace

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 15]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("non-hex character in seed string");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kB64Digits[(v >> 18) & 63]);
    out.push_back(kB64Digits[(v >> 12) & 63]);
    out.push_back(kB64Digits[(v >> 6) & 63]);
    out.push_back(kB64Digits[v & 63]);
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = bytes[i] << 16;
    out.push_back(kB64Digits[(v >> 18) & 63]);
    out.push_back(kB64Digits[(v >> 12) & 63]);
    out.push_back('=');
    out.push_back('=');
  } else if (rest == 2) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(kB64Digits[(v >> 18) & 63]);
    out.push_back(kB64Digits[(v >> 12) & 63]);
    out.push_back(kB64Digits[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64 length not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pads = 0;
    for (int j = 0; j < 4; ++j) {
      const char c = text[i + j];
      if (c == '=') {
        if (i + 4 != text.size() || j < 2) {
          throw std::invalid_argument("base64 padding misplaced");
        }
        vals[j] = 0;
        ++pads;
      } else {
        if (pads > 0) throw std::invalid_argument("base64 data after padding");
        vals[j] = b64_value(c);
        if (vals[j] < 0) throw std::invalid_argument("invalid base64 character");
      }
    }
    const std::uint32_t v = (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 255));
    if (pads < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 255));
    if (pads < 1) out.push_back(static_cast<std::uint8_t>(v & 255));
  }
  return out;
}

}  // namespace brip
