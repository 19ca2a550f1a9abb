#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace flatweights {

// Worker count for parallel_for. Defaults to FLATWEIGHTS_THREADS if set,
// otherwise hardware_concurrency. set_thread_count(0) restores the default.
int thread_count();
void set_thread_count(int n);

// Runs f(i) for i in [0, n). Results must be written to per-index slots;
// the split into contiguous blocks never affects what each f(i) computes,
// so output is identical for any thread count.
template <class F>
void parallel_for(std::int64_t n, F&& f) {
  const int workers = thread_count();
  if (workers <= 1 || n < 256) {
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr err;
  std::mutex err_mu;
  for (int b = 0; b < workers; ++b) {
    const std::int64_t lo = n * b / workers;
    const std::int64_t hi = n * (b + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace flatweights
