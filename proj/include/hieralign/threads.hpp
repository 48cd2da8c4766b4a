#pragma once

#include <functional>

namespace hieralign {

// Worker count for parallel sections: HIERALIGN_THREADS if set (clamped to
// at least 1), otherwise the hardware concurrency.
int configured_threads();

// Runs fn(0..n-1) on up to `threads` workers. threads <= 1 runs inline.
// The first exception thrown by any task is rethrown after all join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace hieralign
