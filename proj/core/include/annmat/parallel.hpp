#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace annmat {

// Runs fn(i) for i in [0, n) across up to `threads` workers, handing out
// chunks of indices. fn must be safe to call concurrently for distinct i and
// must write only to i's own output slot. With threads <= 1 everything runs
// inline. The first exception thrown by any worker is rethrown after the join.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  int nt = std::min(threads, n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int chunk = std::max(1, n / (nt * 8));
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      int lo = next.fetch_add(chunk);
      if (lo >= n) return;
      int hi = std::min(n, lo + chunk);
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace annmat
