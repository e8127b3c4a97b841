#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "stylestat/common.hpp"

namespace stylestat {

/// Run body(i) for i in [0, n) across worker threads. Tasks must write to
/// disjoint state so results do not depend on scheduling. If several tasks
/// throw, the exception from the smallest index is rethrown, which keeps
/// error reporting deterministic as well.
inline void parallel_for(Index n, const std::function<void(Index)>& body,
                         unsigned threads = 0) {
  if (n <= 0) return;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (threads > static_cast<unsigned>(n)) threads = static_cast<unsigned>(n);

  if (threads == 1) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<Index> next{0};
  std::mutex error_mutex;
  Index error_index = n;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const Index i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (error) std::rethrow_exception(error);
}

}  // namespace stylestat
