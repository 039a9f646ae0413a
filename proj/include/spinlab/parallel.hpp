#pragma once

#include <cstddef>
#include <functional>

namespace spinlab {

/// Number of worker threads used by library loops. Defaults to 1.
int thread_count();
void set_thread_count(int n);

/// Calls fn(i) for every i in [0, n). Each index is processed exactly once and
/// callers write results into per-index slots, so the output does not depend
/// on the number of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace spinlab
