#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace slicegeo {

/// Runs f(i) for i in [0, n) on up to `threads` workers. Each item writes only
/// its own slot, so results are identical for any thread count; reductions are
/// done afterwards by scanning slots in index order.
template <class F>
inline void parallel_for(std::size_t n, int threads, F&& f) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> error_flag{0};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) break;
                try {
                    f(i);
                } catch (...) {
                    if (error_flag.exchange(1) == 0) first_error = std::current_exception();
                    failed.store(true);
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace slicegeo
