// Copyright 2026 The QSDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSDC_PROTOCOLS_STATS_H
#define QSDC_PROTOCOLS_STATS_H

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace qsdc::protocols {

/// Two-sided normal quantile for 99% confidence.
inline constexpr double kZ99 = 2.5758293035489004;

/// A Monte Carlo proportion with its Wilson score interval.
struct Proportion {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double p_hat = 0;
    double lo = 0;
    double hi = 0;

    bool contains(double p) const { return lo <= p && p <= hi; }
};

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// Disjoint intervals, a strictly below b.
inline bool separated_below(const Proportion& a, const Proportion& b) { return a.hi < b.lo; }

nlohmann::json to_json(const Proportion& p);

/// Worker count: QSDC_WORKERS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs fn(t) for t in [0, trials) over the worker pool and returns the
/// results in trial order, so the outcome does not depend on the number
/// of workers. The first exception thrown by any trial is rethrown.
template <typename Fn>
auto run_trials(std::uint64_t trials, Fn fn) -> std::vector<decltype(fn(std::uint64_t{0}))> {
    using R = decltype(fn(std::uint64_t{0}));
    std::vector<R> out(trials);
    const std::size_t workers = std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(trials, 1));
    if (workers <= 1) {
        for (std::uint64_t t = 0; t < trials; t++) {
            out[t] = fn(t);
        }
        return out;
    }
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t t = w; t < trials; t += workers) {
                    out[t] = fn(t);
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_STATS_H
