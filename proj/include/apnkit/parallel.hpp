#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace apnkit {

// Splits [begin, end) into `jobs` contiguous ranges and runs
// `fn(worker, lo, hi)` on each, one thread per range. Worker w always gets
// the w-th range, so callers can merge per-worker partials in index order
// and get results that do not depend on the worker count.
template <typename Fn>
void parallel_ranges(int jobs, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    jobs = std::max(1, jobs);
    const std::uint64_t total = end > begin ? end - begin : 0;
    if (jobs == 1 || total < 2) {
        fn(0, begin, end);
        return;
    }
    const auto workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), total));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = begin + total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t hi = begin + total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
        threads.emplace_back([&, w, lo, hi] {
            try {
                fn(w, lo, hi);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline int worker_count(int jobs, std::uint64_t total) {
    return static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(1, jobs)),
                                                    std::max<std::uint64_t>(total, 1)));
}

}  // namespace apnkit
