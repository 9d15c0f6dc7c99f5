#pragma once

#include <cstddef>
#include <functional>

namespace closet {

// Worker count: CLOSE_THREADS env var caps parallelism, 0 or unset = auto.
unsigned thread_budget();

// Runs fn(i) for i in [0, n). Work items must write to disjoint state;
// iteration order is unspecified but the set of calls is exactly [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace closet
