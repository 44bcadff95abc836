#include "beadsim/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace beadsim {

unsigned default_thread_count() {
    if (const char* env = std::getenv("BEADSIM_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

void parallel_for_blocks(std::size_t n_blocks, const std::function<void(std::size_t)>& fn,
                         unsigned n_threads) {
    if (n_blocks == 0) return;
    if (n_threads == 0) n_threads = default_thread_count();
    if (n_threads > n_blocks) n_threads = unsigned(n_blocks);

    if (n_threads == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(b);
            } catch (...) {
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("parallel_for_blocks: a block failed");
}

}  // namespace beadsim
