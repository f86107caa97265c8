// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ccauchy {

/// Worker budget for parallel sections. CCAUCHY_THREADS caps it when set
/// (0 means sequential); otherwise the hardware concurrency is used. Results
/// never depend on the budget: parallel loops only combine order-independent
/// per-index values.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("CCAUCHY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1;
    return static_cast<unsigned>(std::min(v, 64L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : std::min(hc, 16u);
}

namespace detail {

/// Runs fn(i) for i in [0, n) across up to `threads` workers in static
/// blocks. fn must only touch state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace detail
}  // namespace ccauchy
