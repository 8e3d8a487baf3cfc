#pragma once

#include <cstddef>
#include <functional>

namespace dixie {

// std::thread::hardware_concurrency(), at least 1.
unsigned default_workers() noexcept;

// Runs task(i) for i in [0, count) on up to `workers` threads (0 = default).
// If any task throws, the exception from the lowest failing index is rethrown
// after all workers have stopped.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

}  // namespace dixie
