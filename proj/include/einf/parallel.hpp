#pragma once

#include <functional>

namespace einf {

// worker count: set_thread_count wins, then EINF_THREADS, then the hardware
int thread_count();
void set_thread_count(int n);

// body(begin, end, worker) over contiguous chunks of [0, n)
void parallel_chunks(long n, const std::function<void(long, long, int)>& body);

}  // namespace einf
