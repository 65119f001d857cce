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

#ifndef BRIP_COMMON_HPP
#define BRIP_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

namespace brip {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown when an exact enumeration would exceed its stated guard
/// (field too large, too many seeds, too many subsets).
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the sparse-recovery solver when the Gram matrix of the
/// selected support is singular beyond the factorization tolerance.
class degenerate_support_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Worker cap for all parallel enumerations. Defaults to the hardware
/// concurrency; set_max_threads(0) restores that default.
int max_threads();
void set_max_threads(int n);

/// Neumaier-compensated accumulator. Partial sums combined across workers
/// must be added in a fixed (range) order so a given worker count is
/// bitwise reproducible.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

namespace detail {

struct Range {
  std::int64_t begin;
  std::int64_t end;
};

/// Splits [0,n) into at most max_threads() contiguous chunks. The split
/// depends only on (n, worker cap), never on scheduling.
std::vector<Range> split_ranges(std::int64_t n);

}  // namespace detail

/// Runs fn(begin, end) over contiguous chunks of [0,n) and returns the
/// per-chunk results in range order.
template <class R, class Fn>
std::vector<R> parallel_map_ranges(std::int64_t n, Fn&& fn) {
  const auto ranges = detail::split_ranges(n);
  if (ranges.size() <= 1) {
    std::vector<R> out;
    if (!ranges.empty()) out.push_back(fn(ranges[0].begin, ranges[0].end));
    return out;
  }
  std::vector<std::future<R>> futs;
  futs.reserve(ranges.size());
  for (const auto& r : ranges) {
    futs.push_back(std::async(std::launch::async,
                              [&fn, r] { return fn(r.begin, r.end); }));
  }
  std::vector<R> out;
  out.reserve(futs.size());
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

}  // namespace brip

#endif  // BRIP_COMMON_HPP
