#pragma once

#include <cstddef>
#include <functional>

namespace dgw {

/// Worker count: DGW_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Runs body(begin, end) over a partition of [0, n) on thread_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dgw
