#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace dfcast {

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index runs
/// exactly once; callers write results into pre-sized slots so output order
/// never depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

/// Deterministic seed for sub-task `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace dfcast
