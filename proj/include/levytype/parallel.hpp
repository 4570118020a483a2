#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace levytype {

//! Pool size: LEVYTYPE_THREADS if set (>= 1), else the hardware concurrency.
int worker_count();

//! Calls f(i) for i in [0, n) on up to worker_count() threads. Work items
//! are independent and write to their own slot, so results do not depend on
//! scheduling. The first exception thrown by any item is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      f(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(run);
  }
  run();
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

} // namespace levytype
