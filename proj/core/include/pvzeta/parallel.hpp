#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace pvzeta {

/// Worker count used when the caller passes 0.
int default_threads();

/// Runs f(task) for task in [0, tasks) on up to `threads` workers. Task i is
/// assigned to worker i % threads, so the split is static; callers merge
/// per-task results in task order to stay deterministic. The first
/// exception thrown by any task is rethrown.
template <class F>
void parallel_for(int tasks, int threads, F&& f) {
  if (threads <= 0) threads = default_threads();
  threads = std::max(1, std::min(threads, tasks));
  if (threads == 1) {
    for (int i = 0; i < tasks; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < tasks; i += threads) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace pvzeta
