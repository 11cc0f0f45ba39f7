#pragma once

#include <cstddef>
#include <functional>

namespace polargrass {

/// Worker count: hardware concurrency, capped by POLAR_GRASS_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Results must be
/// written to per-index slots by the caller so output stays schedule-free.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace polargrass
