#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace quiverpoly {

/// Static-striped parallel loop: fn(index) for index in [0, count). Callers
/// write results keyed by index, so any job count produces identical output.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&fn, w, workers, count] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (std::thread& t : threads) t.join();
}

}  // namespace quiverpoly
