#pragma once

#include <cstddef>
#include <functional>

namespace stlab {

/// Worker count: hardware concurrency, capped by STRANSFORM_LAB_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Each index
/// runs exactly once; callers write results into per-index slots, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace stlab
