#pragma once

#include <functional>

#include "fad/types.hpp"

namespace fad {

/// Effective worker count: `requested` if positive, otherwise the FAD_THREADS
/// environment variable, otherwise the hardware concurrency.
int resolveThreads(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items must be
/// independent; results keyed by i are identical for any thread count.
void parallelFor(Index n, int threads, const std::function<void(Index)>& fn);

}  // namespace fad
