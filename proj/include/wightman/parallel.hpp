#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

// Deterministic parallel map: results land in an index-ordered vector and are
// reduced sequentially by the caller, so thread count never changes values.

namespace wightman {

inline std::atomic<int>& thread_limit_storage() {
  static std::atomic<int> limit{0};  // 0 = resolve from env / hardware
  return limit;
}

inline void set_thread_limit(int n) { thread_limit_storage() = n; }

inline int thread_limit() {
  int n = thread_limit_storage();
  if (n > 0) return n;
  if (const char* env = std::getenv("WIGHTMAN_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
  std::vector<T> results(count);
  const int workers = std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = f(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mtx;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          results[i] = f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mtx);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace wightman
