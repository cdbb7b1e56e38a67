#pragma once

#include <cstddef>
#include <functional>

namespace uqlab {

/// Worker count: UQLAB_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index is visited
/// exactly once, so results written per index do not depend on thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace uqlab
