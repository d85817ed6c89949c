#pragma once

#include <thread>
#include <vector>

namespace toric {

/// Run fn(i) for i in [0, n) on up to `threads` workers. Callers write
/// results into preallocated per-index slots, so output order is
/// deterministic regardless of scheduling.
template <typename Fn>
void parallelFor(int n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 2 * threads) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        int lo = w * chunk;
        int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace toric
