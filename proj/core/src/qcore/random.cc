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

#include "qsdc/qcore/random.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsdc {

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("RandomSource::below: bound must be positive");
    }
    // Rejection sampling on the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        std::uint64_t v = engine_();
        if (v < limit) {
            return v % bound;
        }
    }
}

std::vector<std::uint32_t> RandomSource::sample_distinct(std::uint32_t range, std::uint32_t count) {
    if (count > range) {
        throw std::invalid_argument("RandomSource::sample_distinct: count exceeds range");
    }
    // Partial Fisher-Yates.
    std::vector<std::uint32_t> pool(range);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint32_t i = 0; i < count; i++) {
        auto j = i + static_cast<std::uint32_t>(below(range - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace qsdc
