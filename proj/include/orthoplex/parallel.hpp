#pragma once

#include <functional>

namespace orthoplex {

// Worker budget: ORTHOPLEX_THREADS if set (0 = auto), else hardware concurrency.
int thread_budget();

// Runs fn(0..count-1) on up to thread_budget() workers. Each index is
// independent; callers write results into preallocated slots so outputs are
// deterministic regardless of scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace orthoplex
