#pragma once

#include <functional>

namespace roofscale {

// Number of worker threads used by grid sweeps and optimizer restarts.
// Defaults to the hardware concurrency; the environment variable
// ROOFSCALE_THREADS (positive integer) caps it.
int worker_count();

// Runs fn(i) for every i in [0, n). Work is split into contiguous static
// blocks so the assignment of indices to threads is deterministic; callers
// write into caller-owned slot i and reduce in index order afterwards, which
// keeps every result independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace roofscale
