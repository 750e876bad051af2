#pragma once

#include <cstddef>
#include <functional>

namespace sqrlat {

// Process-wide worker count used by the parallel loops; 1 runs everything inline.
void set_thread_count(int n);  // n <= 0 selects the hardware concurrency
int thread_count();

// body(i) for every i in [0, n). Results must be written to per-index slots so the outcome does not
// depend on scheduling. If any call throws, the exception of the smallest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sqrlat
