#pragma once

#include <cstddef>
#include <functional>

namespace beadsim {

// Worker count: the BEADSIM_THREADS environment variable when set (clamped
// to at least 1), otherwise the hardware concurrency.
unsigned default_thread_count();

// Runs fn(block_index) for every index in [0, n_blocks) across up to
// n_threads workers (0 = default_thread_count()). Each call owns its block's
// output slot exclusively, so reductions done afterwards in ascending block
// order are bit-identical no matter how many threads ran or how the blocks
// were scheduled.
void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& fn,
                         unsigned n_threads = 0);

}  // namespace beadsim
