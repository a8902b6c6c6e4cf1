// Copyright 2026 The matchrisk Authors. Apache 2.0 licensed. See LICENSE in the project root.

#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace matchrisk {

/// Static-partition parallel loop over [begin, end). Each worker owns a
/// contiguous chunk, so every index is computed exactly once by exactly one
/// thread and results are bit-identical for any worker count.
template <typename Fn>
void parallel_for(size_t begin, size_t end, int workers, Fn&& fn) {
    const size_t n = end > begin ? end - begin : 0;
    if (n == 0) return;
    size_t w = workers < 1 ? 1 : static_cast<size_t>(workers);
    if (w > n) w = n;
    if (w == 1) {
        for (size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    const size_t chunk = (n + w - 1) / w;
    for (size_t t = 0; t < w; ++t) {
        const size_t lo = begin + t * chunk;
        const size_t hi = lo + chunk < end ? lo + chunk : end;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace matchrisk
