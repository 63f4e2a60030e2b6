#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace dhm {

// Fixed split of a sample budget into contiguous trajectory ranges. The
// split depends on the budget only, so results do not depend on how many
// workers run the tasks.
struct TaskPlan {
  std::uint64_t total = 0;
  std::uint64_t chunk = 1u << 14;

  std::uint64_t tasks() const { return total == 0 ? 0 : (total + chunk - 1) / chunk; }
  std::uint64_t begin(std::uint64_t task) const { return task * chunk; }
  std::uint64_t end(std::uint64_t task) const { return std::min(total, (task + 1) * chunk); }
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(task) for task in [0, n_tasks) on up to `threads` workers and
// returns the results indexed by task. If tasks throw, the exception of the
// lowest failing task id is rethrown.
template <class Result, class Fn>
std::vector<Result> run_tasks(std::uint64_t n_tasks, unsigned threads, Fn&& fn) {
  std::vector<Result> results(n_tasks);
  std::vector<std::exception_ptr> errors(n_tasks);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= n_tasks || failed.load(std::memory_order_relaxed)) return;
      try {
        results[t] = fn(t);
      } catch (...) {
        errors[t] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const unsigned width = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_tasks, 1)));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(width);
    for (unsigned i = 0; i < width; ++i) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace dhm
