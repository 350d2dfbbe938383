#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace muibfd {

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware default).
/// Callers write results into preallocated slots indexed by i, so the output
/// is independent of scheduling order.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (n == 0) return;
    unsigned hw = threads ? threads : std::thread::hardware_concurrency();
    if (hw <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    hw = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    pool.reserve(hw);
    const std::size_t chunk = (n + hw - 1) / hw;
    for (unsigned t = 0; t < hw; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace muibfd
