#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace roughflow {

// Worker count is owned by the CLI; library loops consult it. Results are
// always written into index-addressed slots and reduced sequentially, so
// output does not depend on scheduling.
inline int& worker_count_ref() {
  static int n = 1;
  return n;
}
inline void set_worker_count(int n) { worker_count_ref() = n < 1 ? 1 : n; }
inline int worker_count() { return worker_count_ref(); }

inline void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace roughflow
