#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace intcheb {

// Worker count: INTCHEB_THREADS if set, else hardware concurrency.
inline int workerCount() {
    if (const char* env = std::getenv("INTCHEB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, count) across workers.  Work items must be
// independent; callers keep determinism by writing into index i of a
// pre-sized buffer and reducing after the join.
inline void parallelFor(long count, const std::function<void(long)>& fn, int threads = 0) {
    if (threads <= 0) threads = workerCount();
    if (threads <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace intcheb
