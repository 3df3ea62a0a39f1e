#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace frontlab {

inline unsigned default_threads() {
    if (const char* env = std::getenv("FRONTLAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

/// Static block partition of [0, count) over nthreads workers.
/// Each index is processed by exactly one worker and workers write
/// disjoint outputs, so results do not depend on the thread count.
inline void parallel_for(std::size_t count, unsigned nthreads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    if (nthreads <= 1 || count == 1) {
        body(0, count);
        return;
    }
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, count));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::size_t chunk = (count + nthreads - 1) / nthreads;
    for (unsigned w = 0; w < nthreads; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace frontlab
