#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace refl4 {

// Runs body(i) for i in [0, n) across `workers` threads in contiguous blocks.
// Callers write results into pre-sized slots indexed by i, so the merged
// output does not depend on the schedule.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t count = std::min<std::size_t>(workers, n);
  const std::size_t block = (n + count - 1) / count;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(n, begin + block);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace refl4
