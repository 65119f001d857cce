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

#include <algorithm>
#include <atomic>
#include <thread>

#include "brip/common.hpp"

namespace brip {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = hardware default

int hardware_default() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}
}  // namespace

int max_threads() {
  const int v = g_max_threads.load(std::memory_order_relaxed);
  return v > 0 ? v : hardware_default();
}

void set_max_threads(int n) {
  g_max_threads.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

namespace detail {

std::vector<Range> split_ranges(std::int64_t n) {
  std::vector<Range> out;
  if (n <= 0) return out;
  const std::int64_t workers = std::min<std::int64_t>(max_threads(), n);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (std::int64_t b = 0; b < n; b += chunk) {
    out.push_back(Range{b, std::min(n, b + chunk)});
  }
  return out;
}

}  // namespace detail

}  // namespace brip
