#pragma once

#include <cstddef>
#include <functional>

namespace volsal {

// Resolves a worker-count hint: 0 means all hardware threads.
std::size_t resolve_threads(std::size_t hint) noexcept;

// Splits [0, n) into at most `threads` contiguous chunks and runs `body` on
// each chunk. Chunk boundaries depend only on n and the thread count, and
// callers write disjoint outputs per index, so results never depend on
// scheduling. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace volsal
