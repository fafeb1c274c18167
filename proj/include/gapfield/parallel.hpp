#pragma once

#include <functional>

namespace gapfield {

// hardware concurrency, capped by GAPFIELD_THREADS when set
int worker_count();

// Calls body(i) for i in [0, n) on the worker pool. Exceptions are rethrown
// on the caller's thread (the one from the smallest index wins).
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace gapfield
