#pragma once

#include <cstddef>
#include <functional>

namespace catforge {

/// Number of worker threads to use. Reads CATFORGE_THREADS (>= 1) if set,
/// otherwise std::thread::hardware_concurrency().
std::size_t thread_budget();

/// Runs body(i) for i in [0, count). Work is distributed over threads by
/// index stride; results must be written to per-index slots so the outcome
/// is independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace catforge
