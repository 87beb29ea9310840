#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace freshtab {

// Runs fn(0..count-1) on a bounded worker pool. fn must handle its own
// exceptions; an escaping exception terminates (by design of std::thread).
inline void bounded_parallel_for(std::size_t count, std::size_t workers,
                                 const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace freshtab
