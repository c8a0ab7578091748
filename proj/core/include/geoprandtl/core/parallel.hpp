#pragma once

#include <cstddef>
#include <functional>

namespace geoprandtl {

/// Worker cap for parallel maps: hardware concurrency, capped by GEOPRANDTL_THREADS when set.
int worker_count();
void set_worker_count(int n);

/// Calls body(begin, end) over a static partition of [0, n). Results must not
/// depend on the partition; every caller writes disjoint output slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace geoprandtl
