#pragma once

#include <cstddef>
#include <functional>

namespace hilbert::parallel {

/// Number of workers used by parallel_for. Defaults to the hardware
/// concurrency. Results never depend on this value: every parallel loop writes
/// to per-index slots and reductions happen afterwards in index order.
int workers();
void set_workers(int n);

/// Calls body(i) for i in [begin, end), split into contiguous chunks.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body);

/// RAII override of the worker count, restored on scope exit.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int n) : saved_(workers()) { set_workers(n); }
  ~ScopedWorkers() { set_workers(saved_); }
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int saved_;
};

}  // namespace hilbert::parallel
