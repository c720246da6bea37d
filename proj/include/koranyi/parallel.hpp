#pragma once

// Deterministic work splitting.  Tasks write into preassigned slots and the
// reduction is a fixed-order pairwise sum, so results are bit-identical for
// any worker count.  KORANYI_ACF_THREADS caps the worker pool (0 = auto).

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace koranyi {

inline unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("KORANYI_ACF_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

// Runs fn(i) for i in [0, n); each call must touch only its own slot of any
// shared output.
inline void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(thread_cap(), n);
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Pairwise summation in a fixed order (independent of how the terms were
// produced).
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n == 0) return 0.0;
    if (n == 1) return v[lo];
    if (n == 2) return v[lo] + v[lo + 1];
    const std::size_t mid = lo + n / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0, v.size()); }

}  // namespace koranyi
