#pragma once

#include <cstddef>
#include <functional>

namespace fraclab {

// Worker count from FRACLAB_WORKERS, else hardware concurrency (at least 1).
unsigned worker_count();
void set_worker_count(unsigned n);

// Runs body(begin, end) over [0, n) split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace fraclab
