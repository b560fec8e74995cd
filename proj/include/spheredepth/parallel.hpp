#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace spheredepth {

inline int default_thread_count() {
  if (const char* env = std::getenv("SPHEREDEPTH_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Each index is touched by
// exactly one worker, so the result is independent of the thread count as long
// as fn does not accumulate across chunk boundaries.
template <class Fn>
void parallel_for(std::int64_t n, Fn&& fn, std::int64_t grain = 1024) {
  if (n <= 0) return;
  int threads = default_thread_count();
  if (threads <= 1 || n <= grain) {
    fn(std::int64_t{0}, n);
    return;
  }
  std::int64_t chunks = std::min<std::int64_t>(threads, (n + grain - 1) / grain);
  std::int64_t chunk = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(chunks));
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::int64_t lo = c * chunk;
    std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace spheredepth
