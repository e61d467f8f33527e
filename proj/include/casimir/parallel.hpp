#pragma once

#include <cstddef>
#include <functional>

namespace casimir {

/// Worker count: CASIMIR_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads. Work items
/// are independent; callers store results by index and reduce in index order so
/// the result does not depend on scheduling. The first exception thrown by a work
/// item is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace casimir
