#pragma once

#include <cstddef>
#include <functional>

namespace nilfix {

/// Number of worker threads to use, read fresh from the environment so a
/// caller may flip NILFIX_THREADS between invocations.  Unset or invalid
/// values fall back to 1; values are clamped to [1, 64].
int effective_threads();

/// Runs fn(i) for i in [0, n).  Work items must only write to their own
/// slot in caller-owned storage; results are then independent of how the
/// range is partitioned, which keeps output identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace nilfix
