#pragma once

#include <cstddef>
#include <functional>

namespace aab {

// Worker count: SetNumThreads() override if positive, else AAB_THREADS if
// set and positive, else hardware concurrency.
int NumThreads();
void SetNumThreads(int num_threads);

// Runs fn(begin, end) over contiguous blocks of [0, count). Blocks are
// disjoint, so callers writing only to their own indices get results that do
// not depend on the thread count.
void ParallelFor(size_t count,
                 const std::function<void(size_t begin, size_t end)>& fn);

}  // namespace aab
