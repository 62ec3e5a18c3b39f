#pragma once

#include <cstddef>
#include <functional>

namespace leeyang {

/// 0 means std::thread::hardware_concurrency() (at least 1).
unsigned resolve_thread_count(unsigned requested) noexcept;

/// Runs body(i) for every i in [0, count) on up to `threads` workers.
/// Indices are handed out dynamically; callers write results by index, so
/// the output order never depends on scheduling. The first exception thrown
/// by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace leeyang
