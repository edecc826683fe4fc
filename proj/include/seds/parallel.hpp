#pragma once

#include <cstddef>
#include <functional>

namespace seds {

/// Worker count used by the row-parallel loops in scan/system. 0 means
/// std::thread::hardware_concurrency(). Results never depend on this value:
/// each output element is computed by one worker with a fixed summation order.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n), splitting the range into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace seds
