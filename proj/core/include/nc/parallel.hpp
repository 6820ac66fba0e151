#pragma once

#include <cstddef>
#include <functional>

namespace nc {

/// Worker count for internal parallel loops: the NC_THREADS environment
/// variable when set to a positive integer, otherwise (unset, 0, or
/// unparsable) the hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for every i in [0, count) on up to worker_count() threads.
/// Iterations must write to disjoint slots; the schedule is
/// order-independent so results do not depend on thread timing.
/// The first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace nc
