#pragma once

#include <cstddef>
#include <functional>

namespace sigtaylor {

/// Worker count: SIGTAYLOR_THREADS when set to a positive integer, else the hardware concurrency.
std::size_t thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sigtaylor
