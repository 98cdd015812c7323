#pragma once

#include <cstddef>
#include <functional>

namespace pcvi {

// Worker count: min(PCVI_THREADS, hardware_concurrency), at least 1.
std::size_t worker_count();

// Runs fn(begin, end) on contiguous index ranges covering [0, n). The chunk
// layout is independent of the worker count, so anything keyed off indices
// stays deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace pcvi
