#pragma once

#include <cstdint>
#include <functional>

namespace rrdps {

/// Execution policy for grid evaluations. Results must be identical under
/// both modes; Serial is the reference the parallel path is tested against.
enum class ExecMode {
    Serial,
    Parallel,
};

/// Number of hardware threads, at least 1.
int hardware_threads();

/// Caps the worker count used by Parallel loops. 0 restores "all cores".
void set_thread_count(int threads);

/// Current effective worker count.
int thread_count();

/// Runs fn(0) ... fn(count-1). Iterations must be independent; each writes
/// only its own output slot, so scheduling cannot change the results.
void parallel_for_index(std::int64_t count, ExecMode mode,
                        const std::function<void(std::int64_t)>& fn);

}  // namespace rrdps
