#pragma once

#include <cstddef>
#include <functional>

namespace bjpa {

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Callers get determinism by writing results into slot i;
/// the partitioning never reorders indices within a slot.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace bjpa
