#pragma once

#include <functional>

namespace crbridge {

// Worker cap from CRBRIDGE_THREADS, else hardware concurrency.
int worker_thread_count();

// Static index partitioning; fn(i) must be independent per index.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace crbridge
