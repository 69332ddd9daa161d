#pragma once

#include <cstddef>
#include <functional>

namespace nlc {

/// Worker threads used by parallel loops. 0 selects the hardware concurrency.
/// The initial value comes from NLC_THREADS when set.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunks are fixed by
/// n and the thread count, and callers write only to per-index slots, so
/// results do not depend on scheduling. The first exception (by chunk order)
/// is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace nlc
