#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace schreierlab {

// Worker count resolution: an explicit request wins over auto-detection,
// and SCHREIER_LAB_THREADS (when set to a positive value) caps the result.
// 0 means auto everywhere.
inline unsigned effective_workers(unsigned requested = 0) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned base = requested > 0 ? requested : hw;
    if (const char* env = std::getenv("SCHREIER_LAB_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap > 0 && cap < base) base = static_cast<unsigned>(cap);
    }
    return base == 0 ? 1 : base;
}

// Dynamic-scheduling parallel loop over [0, count). The body must be safe to
// run concurrently for distinct indices.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned workers, Body&& body) {
    workers = effective_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawned = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, count));
    pool.reserve(spawned - 1);
    for (unsigned t = 1; t < spawned; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace schreierlab
