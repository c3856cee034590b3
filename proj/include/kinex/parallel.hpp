#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kinex {

/// Thread count from an explicit request, else $KINEX_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items are
/// claimed dynamically, so fn must only touch state owned by item i.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(threads == 0 ? 1 : threads, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Element-wise sum of compute(i) over i in [0, n), each a vector of length
/// `length`. Items are computed in fixed-size blocks and added in index
/// order, so the floating-point result does not depend on `threads`.
template <class Compute>
std::vector<double> ordered_sum(std::size_t n, std::size_t length,
                                unsigned threads, Compute&& compute) {
  constexpr std::size_t kBlock = 64;
  std::vector<double> total(length, 0.0);
  std::vector<std::vector<double>> block(kBlock);
  for (std::size_t base = 0; base < n; base += kBlock) {
    const std::size_t count = std::min(kBlock, n - base);
    parallel_for(count, threads, [&](std::size_t k) { block[k] = compute(base + k); });
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t s = 0; s < length; ++s) total[s] += block[k][s];
    }
  }
  return total;
}

}  // namespace kinex
