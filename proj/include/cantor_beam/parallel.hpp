#pragma once

#include <cstddef>
#include <functional>

namespace cantor_beam {

/// Worker cap: CANTOR_BEAM_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. Results must be
/// written to per-index slots; the first exception thrown is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cantor_beam
