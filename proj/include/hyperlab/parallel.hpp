#pragma once

// Fan independent trials out over a fixed pool of worker threads. Results
// land at their trial index, so output order never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace hyperlab {

inline unsigned default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class F>
auto parallel_map(std::size_t count, unsigned threads, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using Result = std::invoke_result_t<F&, std::size_t>;
  std::vector<Result> out(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(count);
            return;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace hyperlab
