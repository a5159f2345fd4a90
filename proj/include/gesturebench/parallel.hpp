#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gesturebench {

/// Runs body(i) for i in [0, count) on up to `threads` workers.
///
/// Indices are handed out dynamically, so bodies must write only to
/// slots they own. If any body throws, the exception of the lowest
/// failing index is rethrown after all workers join, which keeps the
/// observable outcome independent of the thread count.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(count);
    auto run = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t spawn = std::min(workers, count) - 1;
        pool.reserve(spawn);
        for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(run);
        run();
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
}

} // namespace gesturebench
