#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rigclust {

/// Resolves a requested worker count; 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
/// Work is handed out in contiguous blocks; callers must write results to
/// index-addressed slots so the outcome never depends on the split.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t block = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * block;
    const std::size_t hi = std::min(count, lo + block);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rigclust
