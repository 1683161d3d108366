#pragma once

#include <cstddef>
#include <functional>

namespace mforge {

/// Worker-thread budget, read once from MULTIPLEX_FORGE_THREADS (default 1).
std::size_t worker_threads();

/// Runs fn(0..count-1), statically partitioned over the worker budget.
/// Tasks must write only to their own output slots; with that discipline the
/// result is identical to sequential execution regardless of thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace mforge
