#pragma once

#include <functional>

namespace isolab {

// Worker count: ISOLAB_THREADS if set, otherwise hardware concurrency (capped).
int worker_count();

// Runs fn(i) for i in [0, n) on the worker pool.  Callers must write to
// disjoint locations; reductions are done serially afterwards so results do
// not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace isolab
