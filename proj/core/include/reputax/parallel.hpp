#pragma once

#include <cstddef>
#include <functional>

namespace reputax {

// Worker count: REPUTAX_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

// Calls body(i) for every i in [0, n). Work is split into contiguous chunks,
// one per worker; each index is visited exactly once, so results written to
// per-index slots do not depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace reputax
