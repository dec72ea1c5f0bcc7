#pragma once

#include <functional>

namespace gsp4lfun {

// Worker cap shared by all parallel loops; 0 means hardware concurrency.
void set_thread_cap(int n);
int thread_cap();

// Runs f(i) for i in [begin, end) across workers.  The index space is split
// into fixed contiguous blocks, so results written to disjoint slots are
// identical for every thread count.
void parallel_for(long begin, long end, const std::function<void(long)>& f);

}
