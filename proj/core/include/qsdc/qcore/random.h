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

#ifndef QSDC_QCORE_RANDOM_H
#define QSDC_QCORE_RANDOM_H

#include <cstdint>
#include <random>
#include <vector>

namespace qsdc {

/// Seeded random stream. Every draw is derived from raw 64-bit engine output
/// with fixed arithmetic, so a seed reproduces the same sequence on every
/// platform (std distributions are implementation-defined and are not used).
class RandomSource {
   public:
    explicit RandomSource(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

    /// Stream for trial `trial` of a run seeded with `master_seed`.
    static RandomSource for_trial(std::uint64_t master_seed, std::uint64_t trial) {
        return RandomSource(master_seed + trial);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    bool coin() { return (engine_() >> 63) != 0; }

    /// `count` distinct values from [0, range), returned in ascending order.
    std::vector<std::uint32_t> sample_distinct(std::uint32_t range, std::uint32_t count);

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qsdc

#endif  // QSDC_QCORE_RANDOM_H
