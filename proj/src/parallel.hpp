#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dnls::detail {

/// Runs body(i) for i in [0, n) on a pool of threads.  Each index is handled by
/// exactly one worker, so writing into slot i of a pre-sized vector is race free
/// and the caller can merge slots in index order for a deterministic result.
template <typename Body>
void parallel_for(long long n, Body&& body) {
  const long long workers =
      std::max<long long>(1, std::min<long long>(n, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (long long i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (long long w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (long long i = next++; i < n; i = next++) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace dnls::detail
