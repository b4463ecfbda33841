#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace specgsa::detail {

/// Runs body(i) for i in [0, count) over contiguous static chunks. Results
/// must be written to per-index slots so the outcome does not depend on the
/// number of workers. workers == 0 means hardware concurrency.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    const std::size_t chunks = std::min<std::size_t>(workers, count);
    if (chunks <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * count / chunks;
        const std::size_t end = (c + 1) * count / chunks;
        threads.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace specgsa::detail
