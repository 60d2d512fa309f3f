#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace twinsieve::detail {

/// Runs fn(i) for every chunk index in [0, chunks) on up to `workers`
/// threads. Chunks are claimed dynamically; callers write results into
/// per-chunk slots so merging stays in chunk order. The first exception
/// thrown by any chunk is rethrown on the calling thread.
template <class Fn>
void parallel_chunks(std::size_t chunks, unsigned workers, Fn&& fn)
{
    if (workers <= 1 || chunks <= 1) {
        for (std::size_t i = 0; i < chunks; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(chunks);
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto count = static_cast<std::size_t>(workers);
        pool.reserve(std::min(count, chunks));
        for (std::size_t t = 0; t < std::min(count, chunks); ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace twinsieve::detail
