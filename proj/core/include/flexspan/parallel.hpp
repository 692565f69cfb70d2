#pragma once

#include <cstddef>
#include <functional>

namespace flexspan {

// Worker count: FLEXSPAN_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Calls fn(i) for i in [0, n) across worker threads. Nested calls from inside a
// worker run serially. Callers write results by index, so output order never
// depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace flexspan
