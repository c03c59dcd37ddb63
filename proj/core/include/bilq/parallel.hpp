// Copyright 2026 The bilq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file parallel.hpp
 * @brief Deterministic fork-join parallel loop over an index range.
 *
 * Each index is processed exactly once and results must be written to
 * per-index slots, so outputs are independent of the worker count.  A global
 * cap (set by the CLI's --workers flag) bounds the thread count everywhere.
 */

#ifndef BILQ_PARALLEL_HPP_
#define BILQ_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace bilq {

/// Process-wide worker cap; 0 means hardware concurrency.
void set_max_workers(int workers);
int max_workers();

/// Runs fn(i) for i in [0, n) across up to max_workers() threads.
/// fn must only write to state owned by index i.  Exceptions propagate.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

namespace detail {
inline std::atomic<int>& worker_cap() {
  static std::atomic<int> cap{0};
  return cap;
}
inline bool& in_parallel_region() {
  thread_local bool nested = false;
  return nested;
}
}  // namespace detail

inline void set_max_workers(int workers) {
  detail::worker_cap().store(workers < 0 ? 0 : workers);
}

inline int max_workers() {
  int cap = detail::worker_cap().load();
  if (cap <= 0) {
    unsigned hc = std::thread::hardware_concurrency();
    cap = hc == 0 ? 1 : static_cast<int>(hc);
  }
  return cap;
}

inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t)>& fn) {
  const int workers =
      static_cast<int>(std::min<std::size_t>(
          static_cast<std::size_t>(max_workers()), n == 0 ? 1 : n));
  if (n == 0) return;
  // Nested parallel regions degrade to serial loops: the outer region
  // already owns the worker budget.
  if (workers <= 1 || n == 1 || detail::in_parallel_region()) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&]() {
    detail::in_parallel_region() = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) break;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        break;
      }
    }
    detail::in_parallel_region() = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace bilq

#endif  // BILQ_PARALLEL_HPP_
