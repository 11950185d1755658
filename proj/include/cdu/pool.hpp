#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cdu {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(block) for every block in [0, blocks) on `workers` threads. Blocks
// are claimed from a shared counter, so callers must write results into
// per-block slots; merged that way the outcome is independent of scheduling.
// The first exception stops the pool and is rethrown after the join.
template <typename Fn>
void parallel_for_blocks(std::uint64_t blocks, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto work = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) return;
            try {
                fn(b);
            } catch (...) {
                {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    unsigned count = workers;
    if (blocks < count) count = static_cast<unsigned>(blocks);
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace cdu
