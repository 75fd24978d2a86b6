#pragma once
// Index-parallel loop for the data-parallel sweeps. Work items write to
// preallocated slots keyed by index, so results are position-deterministic
// regardless of thread count. STARMEANS_THREADS caps the worker count.

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace starmeans {

inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("STARMEANS_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && cap < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
        else hw = 1;
    }
    return static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::min(count, thread_budget());
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace starmeans
