#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hybrid_recall {

/// Thread budget for read-only fan-out work (metric computation, mining).
/// Capped by the HYBRID_RECALL_THREADS environment variable.
inline std::size_t thread_budget() {
    std::size_t budget = std::thread::hardware_concurrency();
    if (budget == 0) budget = 1;
    if (const char* env = std::getenv("HYBRID_RECALL_THREADS")) {
        const long parsed = std::atol(env);
        if (parsed >= 1 && static_cast<std::size_t>(parsed) < budget) {
            budget = static_cast<std::size_t>(parsed);
        }
        if (parsed >= 1 && static_cast<std::size_t>(parsed) > budget) {
            budget = static_cast<std::size_t>(parsed);
        }
    }
    return budget;
}

/// Runs fn(i) for i in [0, n). Each index is processed exactly once and
/// callers must write results into pre-sized slots so the output does not
/// depend on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t threads = std::min(thread_budget(), n);
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace hybrid_recall
