#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace smtjsim {

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, n) across nthreads workers on static index blocks.
// Each index writes only its own output slot, so results are identical for
// every thread count; reductions must then run sequentially over slots.
template <typename Fn>
void parallel_for(std::size_t n, unsigned nthreads, Fn&& fn) {
  if (n == 0) return;
  if (nthreads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(nthreads, n));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::size_t lo = n * w / workers;
      std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace smtjsim
