#pragma once

#include <cstdint>
#include <functional>

namespace resnet {

/// Number of worker threads used by parallel kernels (quadrature cells,
/// Monte Carlo episodes). Defaults to RESNET_THREADS from the environment,
/// falling back to the hardware concurrency. Results are deterministic for
/// any budget: reductions use fixed block boundaries and ordered combining.
int thread_budget();

/// Caps the worker count; values < 1 reset to the default.
void set_thread_budget(int n);

namespace detail {

/// Runs fn(block_begin, block_end) over [0, count) split into fixed-size
/// blocks; block boundaries do not depend on the thread budget.
void parallel_blocks(std::int64_t count, std::int64_t block_size,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace detail
}  // namespace resnet
