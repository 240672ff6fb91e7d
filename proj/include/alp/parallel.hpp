// Copyright 2026 The ALP Mechanism Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALP_PARALLEL_HPP_
#define ALP_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace alp {

// Runs fn(begin, end) over fixed-size index chunks. Chunk boundaries
// depend only on (total, chunk), never on the worker count, so work that
// writes to disjoint per-index slots yields identical results for any
// number of threads. fn must not touch shared mutable state.
inline void parallel_for_chunks(
    std::uint64_t total, std::uint64_t chunk, unsigned threads,
    const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
  if (total == 0) return;
  if (chunk == 0) chunk = 1;
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || nchunks <= 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c) {
      fn(c * chunk, std::min(total, (c + 1) * chunk));
    }
    return;
  }
  if (threads > nchunks) threads = static_cast<unsigned>(nchunks);

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) break;
      try {
        fn(c * chunk, std::min(total, (c + 1) * chunk));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace alp

#endif  // ALP_PARALLEL_HPP_
