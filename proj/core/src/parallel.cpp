#include "flatweights/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace flatweights {

namespace {

int default_threads() {
  if (const char* env = std::getenv("FLATWEIGHTS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_threads{0};  // 0 means "use default"

}  // namespace

int thread_count() {
  const int v = g_threads.load(std::memory_order_relaxed);
  return v >= 1 ? v : default_threads();
}

void set_thread_count(int n) {
  g_threads.store(n >= 1 ? n : 0, std::memory_order_relaxed);
}

}  // namespace flatweights
