#pragma once

// Deterministic parallel evaluation: work is split into fixed chunks whose
// content does not depend on which thread runs them, so any reduction that
// combines per-chunk results in chunk order is independent of the thread
// count.

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace semrdc {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// fn(chunk_index) is called exactly once for every index in [0, n_chunks).
template <typename Fn>
void parallel_for_chunks(std::int64_t n_chunks, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads > n_chunks) threads = static_cast<int>(n_chunks > 0 ? n_chunks : 1);
  if (threads <= 1) {
    for (std::int64_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_chunks || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace semrdc
