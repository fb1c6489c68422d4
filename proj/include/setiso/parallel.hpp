#pragma once

#include <cstddef>
#include <functional>

namespace setiso {

// Worker count from SETISO_THREADS, else the hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Callers write results
// into slot i, so the outcome does not depend on scheduling. The first exception thrown
// by any task (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace setiso
