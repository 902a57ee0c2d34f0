#ifndef HDNT_PARALLEL_HPP
#define HDNT_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace hdnt {

/// Runs fn(i) for i in [0, count) on up to `threads` worker threads.
///
/// Work items are claimed from a shared atomic counter, so the schedule is
/// arbitrary; callers must write results into per-index slots to stay
/// schedule-independent. threads <= 1 runs the plain serial loop. The first
/// exception thrown by any item is rethrown on the calling thread.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

/// Thread budget resolution: explicit value if positive, else the
/// HDNT_THREADS environment variable, else hardware concurrency.
int resolve_threads(int requested);

}  // namespace hdnt

#endif  // HDNT_PARALLEL_HPP
