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

#include "brip/smallbias.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "brip/common.hpp"

namespace brip::smallbias {

namespace {

void check_parity_set(const std::vector<int>& parity_set, int n_bits) {
  if (parity_set.empty()) throw std::invalid_argument("parity set is empty");
  int prev = 0;
  for (int i : parity_set) {
    if (i <= prev) throw std::invalid_argument("parity set indices must be strictly increasing");
    if (i > n_bits) throw std::invalid_argument("parity set index exceeds n_bits");
    prev = i;
  }
}

std::vector<std::uint32_t> enumerate_masks(int n_bits, int max_size) {
  std::vector<std::uint32_t> masks;
  for (int size = 1; size <= max_size; ++size) {
    // Gosper's hack walks same-popcount masks in increasing numeric order.
    std::uint32_t m = (1u << size) - 1;
    const std::uint32_t limit = 1u << n_bits;
    while (m < limit) {
      masks.push_back(m);
      const std::uint32_t c = m & (~m + 1);
      const std::uint32_t r = m + c;
      m = (((r ^ m) >> 2) / c) | r;
    }
  }
  return masks;
}

}  // namespace

int choose_degree(int n_bits, double log2_inv_eps) {
  if (n_bits < 1) throw std::invalid_argument("choose_degree: n_bits must be >= 1");
  if (log2_inv_eps < 0) throw std::invalid_argument("choose_degree: log2_inv_eps must be >= 0");
  const long double target =
      std::log2(static_cast<long double>(n_bits)) + static_cast<long double>(log2_inv_eps);
  long long r = static_cast<long long>(std::ceil(target));
  if (r < 2) r = 2;
  // Guard against a misrounded ceiling at exact dyadic boundaries.
  while (static_cast<long double>(r) < target) ++r;
  while (r > 2 && static_cast<long double>(r - 1) >= target) --r;
  return static_cast<int>(r);
}

PoweringSpec make_powering_spec(int n_bits, double log2_inv_eps) {
  const int r = choose_degree(n_bits, log2_inv_eps);
  if (r > gf2::kMaxDegree) {
    throw capacity_error("powering construction needs field degree r=" + std::to_string(r) +
                         " > 63; use the composed generator mode");
  }
  return PoweringSpec{n_bits, r, gf2::find_irreducible(r)};
}

PoweringSpec make_powering_spec_with_degree(int n_bits, int r) {
  if (n_bits < 1) throw std::invalid_argument("powering spec: n_bits must be >= 1");
  if (r < 64 && static_cast<std::uint64_t>(n_bits) >= (1ull << r)) {
    throw std::invalid_argument("powering spec: need n_bits < 2^r for a nontrivial bias bound");
  }
  return PoweringSpec{n_bits, r, gf2::find_irreducible(r)};
}

BitVector generate(const PoweringSpec& spec, gf2::FieldElement x, gf2::FieldElement y) {
  if (x.degree != spec.r || y.degree != spec.r) {
    throw std::invalid_argument("powering generate: seed element degree mismatch");
  }
  BitVector out(static_cast<std::size_t>(spec.n_bits));
  std::uint64_t power = x.value;  // x^1
  for (int i = 0; i < spec.n_bits; ++i) {
    out.set(static_cast<std::size_t>(i),
            std::popcount(power & y.value) & 1);
    power = gf2::mul_bits(power, x.value, spec.poly.bits, spec.r);
  }
  return out;
}

BitVector generate(const PoweringSpec& spec, const BitVector& seed) {
  if (seed.size() != static_cast<std::size_t>(spec.seed_bits())) {
    throw std::invalid_argument("powering generate: seed must be exactly 2r bits");
  }
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  for (int i = 0; i < spec.r; ++i) {
    if (seed.get(static_cast<std::size_t>(i))) x |= 1ull << i;
    if (seed.get(static_cast<std::size_t>(spec.r + i))) y |= 1ull << i;
  }
  return generate(spec, gf2::FieldElement{x, spec.r}, gf2::FieldElement{y, spec.r});
}

Rational bias_rootcount(const PoweringSpec& spec, const std::vector<int>& parity_set) {
  check_parity_set(parity_set, spec.n_bits);
  if (spec.r > 26) {
    throw capacity_error("bias_rootcount: field 2^" + std::to_string(spec.r) +
                         " too large to enumerate (cap 2^26)");
  }
  const std::uint64_t field_size = 1ull << spec.r;
  const int top_index = parity_set.back();

  const auto counts = parallel_map_ranges<std::uint64_t>(
      static_cast<std::int64_t>(field_size),
      [&](std::int64_t begin, std::int64_t end) {
        std::uint64_t roots = 0;
        for (std::int64_t xv = begin; xv < end; ++xv) {
          const std::uint64_t x = static_cast<std::uint64_t>(xv);
          std::uint64_t acc = 0;
          std::uint64_t power = x;  // x^1
          auto it = parity_set.begin();
          for (int i = 1; i <= top_index; ++i) {
            if (i == *it) {
              acc ^= power;
              if (++it == parity_set.end()) break;
            }
            power = gf2::mul_bits(power, x, spec.poly.bits, spec.r);
          }
          if (acc == 0) ++roots;
        }
        return roots;
      });

  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return Rational{total, field_size};
}

BitGeneratorView view(const PoweringSpec& spec) {
  BitGeneratorView v;
  v.n_bits = spec.n_bits;
  v.seed_bits = spec.seed_bits();
  v.bias_bound = Rational{static_cast<std::uint64_t>(spec.n_bits), 1ull << spec.r};
  v.emit = [spec](const BitVector& seed) { return generate(spec, seed); };
  return v;
}

BitGeneratorView uniform_stub(int n_bits) {
  if (n_bits < 1) throw std::invalid_argument("uniform_stub: n_bits must be >= 1");
  BitGeneratorView v;
  v.n_bits = n_bits;
  v.seed_bits = n_bits;
  v.bias_bound = Rational{0, 1};
  v.emit = [](const BitVector& seed) { return seed; };
  return v;
}

BiasAuditReport audit_bias_exhaustive(const BitGeneratorView& gen, int max_parity_size) {
  if (gen.seed_bits > 26) {
    throw capacity_error("bias audit: seed space 2^" + std::to_string(gen.seed_bits) +
                         " too large to enumerate (cap 2^26)");
  }
  if (gen.n_bits > 24) {
    throw capacity_error("bias audit: n_bits=" + std::to_string(gen.n_bits) +
                         " too large (cap 24)");
  }
  if (max_parity_size < 1 || max_parity_size > gen.n_bits) {
    throw std::invalid_argument("bias audit: max_parity_size must be in [1, n_bits]");
  }

  const std::vector<std::uint32_t> masks = enumerate_masks(gen.n_bits, max_parity_size);
  const std::int64_t seed_count = 1ll << gen.seed_bits;

  const auto partials = parallel_map_ranges<std::vector<std::int64_t>>(
      seed_count, [&](std::int64_t begin, std::int64_t end) {
        std::vector<std::int64_t> sums(masks.size(), 0);
        for (std::int64_t s = begin; s < end; ++s) {
          BitVector seed(static_cast<std::size_t>(gen.seed_bits));
          for (int b = 0; b < gen.seed_bits; ++b) {
            seed.set(static_cast<std::size_t>(b), (static_cast<std::uint64_t>(s) >> b) & 1);
          }
          const std::uint32_t w = static_cast<std::uint32_t>(gen.emit(seed).low_u64());
          for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            sums[mi] += 1 - 2 * (std::popcount(w & masks[mi]) & 1);
          }
        }
        return sums;
      });

  std::vector<std::int64_t> sums(masks.size(), 0);
  for (const auto& part : partials) {
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += part[i];
  }

  BiasAuditReport report;
  report.n_bits = gen.n_bits;
  report.seed_bits = gen.seed_bits;
  report.max_parity_size = max_parity_size;
  report.max_bias_den = static_cast<std::uint64_t>(seed_count);
  report.bound_num = gen.bias_bound.num;
  report.bound_den = gen.bias_bound.den;
  report.max_abs_sum_by_size.assign(static_cast<std::size_t>(max_parity_size), 0);
  report.per_set.reserve(masks.size());

  std::uint32_t argmax_mask = 0;
  std::uint64_t best = 0;
  bool have_best = false;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const std::uint64_t abs_sum =
        static_cast<std::uint64_t>(sums[i] < 0 ? -sums[i] : sums[i]);
    report.per_set.emplace_back(masks[i], sums[i]);
    auto& size_max = report.max_abs_sum_by_size[static_cast<std::size_t>(
        std::popcount(masks[i]) - 1)];
    if (abs_sum > size_max) size_max = abs_sum;
    if (!have_best || abs_sum > best) {
      have_best = true;
      best = abs_sum;
      argmax_mask = masks[i];
    }
  }
  report.max_bias_num = best;
  for (int i = 0; i < gen.n_bits; ++i) {
    if ((argmax_mask >> i) & 1) report.argmax_set.push_back(i + 1);
  }
  return report;
}

}  // namespace brip::smallbias
