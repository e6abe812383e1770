#pragma once

#include <cstddef>
#include <functional>

namespace cvlab {

/// Hardware concurrency, capped by the CVLAB_THREADS environment variable
/// when it holds a positive integer. Always >= 1.
int worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Results must be
/// written to per-index slots by the caller. If any call throws, the
/// exception from the lowest failing index is rethrown after all workers
/// have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int workers = worker_count());

}  // namespace cvlab
