#pragma once

#include <cstddef>
#include <functional>

namespace isobary {

/// Worker count from ISOBARY_THREADS, else the hardware concurrency (>= 1).
int default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
/// must write only its own output slot; merging in index order is then
/// independent of the worker count. The exception from the lowest failing
/// index is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace isobary
