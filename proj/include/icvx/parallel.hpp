#pragma once

#include <cstddef>
#include <functional>

namespace icvx {

/// Worker count: ICVX_THREADS if set (>= 1), else the hardware concurrency.
int thread_count();

/// Runs fn(0..n-1) on up to thread_count() threads. The first exception
/// thrown by a task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace icvx
