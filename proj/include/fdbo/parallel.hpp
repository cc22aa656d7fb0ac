#pragma once

#include <cstddef>
#include <functional>

namespace fdbo {

// Worker count: hardware concurrency, capped by FDBO_THREADS when set.
int thread_count();

// Runs body(i) for i in [0, count). Each index is handled exactly once; any
// exception is rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fdbo
