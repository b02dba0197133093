#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace theta {

/// Splits [0, n) into `workers` contiguous chunks and runs body(begin, end) on each.
/// Results must be written to disjoint, index-addressed slots so output does not depend on the worker count.
template <class Body>
void parallel_for(unsigned workers, std::size_t n, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2 * workers) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
    pool.emplace_back([&, w, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace theta
