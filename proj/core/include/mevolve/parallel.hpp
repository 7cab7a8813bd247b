#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mevolve {

/// Runs fn(i) for i in [0, n) across `workers` threads in fixed blocks.
/// Callers write results into pre-sized slots indexed by i, which keeps
/// outputs independent of scheduling. workers <= 1 runs inline.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t thread_count = std::min<std::size_t>(workers, n);
  std::vector<std::thread> threads;
  threads.reserve(thread_count);
  std::vector<std::exception_ptr> errors(thread_count);
  const std::size_t chunk = (n + thread_count - 1) / thread_count;
  for (std::size_t t = 0; t < thread_count; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace mevolve
