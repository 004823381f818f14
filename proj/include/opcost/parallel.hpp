#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace opcost {

/// Run fn(begin, end) over disjoint contiguous index ranges on up to
/// `threads` workers. Callers write results into preallocated slots indexed
/// by position, so output is identical for any thread count.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || count < 2) {
    fn(0, count);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (std::thread& th : pool) th.join();
}

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace opcost
