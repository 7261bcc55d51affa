#pragma once

#include <cstddef>
#include <functional>

namespace holelab {

/// Number of worker threads: hardware concurrency capped by the
/// HOLE_LAB_THREADS environment variable (if set and positive).
unsigned worker_count();

/// Runs body(i) for i in [0, count). Work items must be independent;
/// callers get deterministic results by writing to per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace holelab
