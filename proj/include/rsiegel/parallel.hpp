#pragma once

#include <cstddef>
#include <functional>

namespace rsiegel {

// Worker count: set_thread_count, else RSIEGEL_THREADS, else hardware concurrency.
int thread_count();
void set_thread_count(int threads);

// Calls body(begin, end, worker) on disjoint chunks of [0, total); blocks until done.
void parallel_for(std::size_t total, const std::function<void(std::size_t, std::size_t, int)>& body);

} // namespace rsiegel
