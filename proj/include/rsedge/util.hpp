#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace rsedge {

/// Replica-level fan-out. Items are claimed atomically, so the schedule
/// is nondeterministic, but every item writes only its own slot and draws
/// only from its own stream, making results worker-count-invariant.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = workers < count ? workers : static_cast<unsigned>(count);
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

} // namespace rsedge
