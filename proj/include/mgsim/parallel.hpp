#pragma once

#include <cstddef>
#include <functional>

namespace mgsim {

/// Worker count: MGSIM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Run body(i) for i in [0, count) on up to thread_count() threads. Work is
/// split into contiguous blocks, so callers that write only slot i of a
/// preallocated output get results independent of the thread count. The
/// first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mgsim
