#pragma once

#include <cstddef>
#include <functional>

namespace ncfa {

//! Worker count: NCFA_THREADS if set and nonzero, else hardware concurrency.
std::size_t worker_count();

//! Runs fn(i) for i in [0, n).  Work is split into contiguous ranges, so
//! results must not depend on the partition (each index is computed fully
//! by one worker).  Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ncfa
