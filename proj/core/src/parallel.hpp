#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace inertia_lab {

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// count) with a static interleaved split. If any call throws, the exception
/// of the lowest failing index is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    std::size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<std::size_t>(workers, std::max<std::size_t>(count, 1));

    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::size_t w) {
        for (std::size_t i = w; i < count; i += workers) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace inertia_lab
