#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bmoo {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Index-sharded parallel loop. Each index is processed exactly once and
/// workers write only to their own slots, so results do not depend on the
/// thread count. Reductions over the results must stay sequential.
template <class Fn>
void parallel_for(std::size_t n, const Fn& fn,
                  unsigned threads = worker_count()) {
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned used = static_cast<unsigned>(
      std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(used);
  for (unsigned t = 0; t < used; ++t) {
    pool.emplace_back([t, used, n, &fn] {
      for (std::size_t i = t; i < n; i += used) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bmoo
