#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace iks {

unsigned default_threads();

/// Splits [0, count) into contiguous chunks, one per worker. Each worker
/// folds its chunk into a private accumulator created by `make`; the
/// accumulators are then merged in chunk order, so the result does not
/// depend on scheduling.
template <class Acc, class Make, class Body, class Merge>
Acc parallel_reduce(std::size_t count, unsigned threads, Make make, Body body, Merge merge) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<Acc> partial;
    partial.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) partial.push_back(make());

    auto chunk_begin = [&](unsigned t) { return count * t / threads; };
    if (threads == 1) {
        body(std::size_t{0}, count, partial[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] { body(chunk_begin(t), chunk_begin(t + 1), partial[t]); });
        }
        for (auto& w : workers) w.join();
    }
    Acc result = std::move(partial[0]);
    for (unsigned t = 1; t < threads; ++t) merge(result, partial[t]);
    return result;
}

}  // namespace iks
