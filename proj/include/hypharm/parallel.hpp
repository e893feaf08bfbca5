#pragma once

#include <cstdlib>
#include <functional>
#include <future>
#include <thread>
#include <vector>

namespace hypharm {

inline int worker_count() {
  if (const char* env = std::getenv("HYPHARM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for i in [0, count) and returns results in index order.
// Each task must be pure given its index (randomness via child streams), so
// results are bit-identical for any worker count.
template <class T>
std::vector<T> parallel_map(int count, const std::function<T(int)>& fn) {
  int workers = std::min(worker_count(), count);
  std::vector<T> out(count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        out[i] = fn(i);
      }
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace hypharm
