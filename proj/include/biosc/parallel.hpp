#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace biosc {

// Index-parallel loop over [0, n). Results must be written into
// caller-preallocated slots keyed by index, which keeps output ordering
// deterministic regardless of the job count.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace biosc
