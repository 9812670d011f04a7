#pragma once

#include <cstddef>
#include <functional>

namespace gradss {

/// Thread cap from GRADSS_THREADS (read on every call); defaults to the hardware concurrency.
std::size_t thread_cap();

/// Runs body(i) for i in [0, count). Each index is handled exactly once and
/// callers write results by index, so output never depends on the thread count.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace gradss
