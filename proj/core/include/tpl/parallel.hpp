#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tpl {

/// Worker count; values below 1 mean "all hardware threads".
inline int resolve_threads(int requested) {
  if (requested >= 1) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(chunk) for chunk in [0, chunks) on a pool of workers. Callers write
/// into per-chunk slots and merge in chunk order, so results do not depend on
/// the worker count. The first exception thrown by any chunk is rethrown.
template <class Fn>
void parallel_chunks(std::size_t chunks, int threads, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(
      static_cast<std::size_t>(resolve_threads(threads)), std::max<std::size_t>(chunks, 1)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            fn(c);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = chunks;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace tpl
