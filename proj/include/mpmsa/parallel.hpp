#pragma once

#include <functional>

namespace mpmsa {

// Worker count: the override if set, else MPMSA_THREADS, else hardware concurrency.
int worker_count();
// 0 clears the override.
void set_worker_override(int n);

// Runs body(i) for i in [0, n). Results must be written to per-index slots so the outcome
// does not depend on scheduling. The exception of the lowest failing index is rethrown.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace mpmsa
