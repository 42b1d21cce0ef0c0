/*
 * Copyright (c) 2026, The balancekit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace balancekit {

std::size_t worker_threads();

namespace detail {

/// Runs body(begin, end, chunk) over `chunks` contiguous ranges of [0, n).
/// Chunk boundaries depend only on n and chunks, so per-chunk results can be
/// reduced deterministically.
template <class Body>
void parallel_chunks(std::size_t n, std::size_t chunks, Body&& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  if (chunks == 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    pool.emplace_back([&body, begin, end, c] { body(begin, end, c); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace balancekit
