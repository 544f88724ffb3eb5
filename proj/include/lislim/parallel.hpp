#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lislim {

// Worker count: LISLIM_WORKERS env var, else hardware concurrency.
inline int default_workers() {
    if (const char* env = std::getenv("LISLIM_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(shard) for shard = 0..n_shards-1 on a small pool. Each shard is
// responsible for its own RNG substream, so results are identical for any
// worker count; callers gather per-shard outputs by index.
inline void parallel_shards(int n_shards, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || n_shards <= 1) {
        for (int s = 0; s < n_shards; ++s) fn(s);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int s = next.fetch_add(1);
            if (s >= n_shards) return;
            fn(s);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(workers, n_shards);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace lislim
