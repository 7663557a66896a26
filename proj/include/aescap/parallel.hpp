#pragma once

#include <cstddef>
#include <functional>

namespace aescap {

// Runs fn(begin, end) over contiguous index chunks, one per worker. Callers
// must write results by index (or into commutative accumulators) so the
// outcome is independent of the worker count.
void parallel_chunks(std::size_t count, std::size_t workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace aescap
