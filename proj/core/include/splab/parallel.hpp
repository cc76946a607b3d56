#pragma once

#include <cstddef>
#include <functional>

namespace splab {

// Worker count from SPLAB_THREADS (default: hardware concurrency, at least 1).
int thread_count();

// Runs body(i) for i in [0, count); iterations must not share mutable state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace splab
