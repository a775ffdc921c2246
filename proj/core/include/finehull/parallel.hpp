#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace finehull {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once, so per-index results never depend on the split.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  std::size_t workers = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1, count ? count : 1);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
}

}  // namespace finehull
