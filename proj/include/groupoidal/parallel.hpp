#ifndef GROUPOIDAL_PARALLEL_HPP
#define GROUPOIDAL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace groupoidal {

// Worker count from GROUPOIDAL_THREADS, else hardware concurrency; at least 1.
unsigned worker_count();

// Calls body(k) for k in [0, n) over contiguous blocks. Results must be
// written to per-index slots. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace groupoidal

#endif
