#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace crem {

/// --threads fallback chain: explicit request, CREM_THREADS, hardware.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CREM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Static partition of [0, n) across threads; f(begin, end, tid). Results
/// must be written by index so that the later index-ordered reduction is
/// identical on any thread count.
template <class F>
void parallel_chunks(std::size_t n, int threads, F&& f) {
  threads = std::max(1, threads);
  if (threads == 1 || n < 2) {
    f(std::size_t{0}, n, 0);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(n, static_cast<std::size_t>(t) * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&f, begin, end, t] { f(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace crem
