#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace fracspec {

namespace detail {
inline std::atomic<unsigned>& thread_cap() {
    static std::atomic<unsigned> cap{1};
    return cap;
}
}  // namespace detail

/// Upper bound on worker threads used inside library calls (default 1).
inline void set_max_threads(unsigned n) { detail::thread_cap() = std::max(1u, n); }
inline unsigned max_threads() { return detail::thread_cap(); }

/// Run body(i) for i in [0, count); iterations must be independent.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    // Strided assignment balances triangular workloads.
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
}

}  // namespace fracspec
