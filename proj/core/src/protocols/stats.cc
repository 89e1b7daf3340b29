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

#include "qsdc/protocols/stats.h"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qsdc::protocols {

Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z) {
    Proportion p;
    p.successes = successes;
    p.trials = trials;
    if (trials == 0) {
        p.hi = 1;
        return p;
    }
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = (ph + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    p.p_hat = ph;
    p.lo = std::max(0.0, centre - half);
    p.hi = std::min(1.0, centre + half);
    return p;
}

nlohmann::json to_json(const Proportion& p) {
    return {{"successes", p.successes}, {"trials", p.trials}, {"p_hat", p.p_hat}, {"ci_lo", p.lo}, {"ci_hi", p.hi}};
}

std::size_t worker_count() {
    if (const char* env = std::getenv("QSDC_WORKERS")) {
        try {
            long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qsdc::protocols
