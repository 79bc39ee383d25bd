#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace trigraph {

inline unsigned default_parallelism() {
  if (const char* env = std::getenv("TRIGRAPH_PARALLELISM")) {
    const long v = std::atol(env);
    if (v >= 1) return unsigned(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) across `threads` workers. Callers make
// per-index results deterministic by splitting one RNG stream per index.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = default_parallelism();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace trigraph
