#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace shellspec {

/// Worker count: hardware concurrency capped by SHELLSPEC_THREADS.
inline int worker_count()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("SHELLSPEC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return n;
}

/// Runs fn(i) for i in [0, n). Each index is touched exactly once; fn must
/// not share mutable state across indices.
inline void parallel_for(long n, const std::function<void(long)>& fn)
{
    const int workers = worker_count();
    if (workers <= 1 || n < 2 * workers) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace shellspec
