#pragma once

#include <cstddef>
#include <functional>

namespace nonlocal {

/// Worker count: NONLOCAL_LAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.  Callers write
/// results into preallocated slots indexed by i, so output order is fixed.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace nonlocal
