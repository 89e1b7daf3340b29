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

#ifndef QSDC_PROTOCOLS_FAIR_H
#define QSDC_PROTOCOLS_FAIR_H

#include <optional>
#include <string>
#include <vector>

#include "qsdc/protocols/common.h"
#include "qsdc/protocols/stats.h"

namespace qsdc::protocols {

/// Step-wise unlocking with s control qubits per stream. Bob sends his
/// qubits to Charlie one at a time; Charlie unlocks each pair and returns
/// the qubit; both check their own control positions as they go.
struct FairConfig {
    std::size_t n = 2;
    std::size_t s = 4;
    Locking locking = Locking::kDcnot;
    Family family = Family::kBell;
    EncodedSymbols b;
    EncodedSymbols c;
    CharlieAdversary adversary;
    double alpha = 0.75;  // acceptance fraction, in (1/2, 1)
    std::uint64_t seed = 0;
};

struct FairResult {
    bool completed = false;
    std::optional<std::string> aborted_by;
    std::optional<std::size_t> detected_at_step;
    std::optional<std::size_t> detected_at_check;
    std::optional<std::string> detected_by;
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    std::size_t bob_correct_bits = 0;
    std::size_t charlie_correct_bits = 0;
    double alpha = 0;
    bool bob_accepts = false;  // correct bits >= alpha * 2n
    bool charlie_accepts = false;
    InsertSpec controls_bob;
    InsertSpec controls_charlie;
    EventLog log;
};

/// ConfigError for a QFT2 lock, alpha outside (1/2, 1) or a bad adversary step.
FairResult run_sdc_fair(const FairConfig& cfg);

/// True when `correct` of `total` bits reaches the alpha fraction.
bool meets_alpha(std::size_t correct, std::size_t total, double alpha);

struct DetectionPoint {
    std::size_t m = 0;
    Proportion detected;
};

/// For m = 1..s: fraction of trials in which Bob detected cheating within
/// his first m control checks. Trial t runs with seed + t and random
/// symbols. ConfigError below 1000 trials.
std::vector<DetectionPoint> estimate_detection_curve(std::size_t n, std::size_t s, CharlieAdversary adversary,
                                                     std::uint64_t trials, std::uint64_t seed,
                                                     Locking locking = Locking::kDcnot);

struct AbortAdvantage {
    std::size_t step = 0;
    double mean_abs_difference = 0;  // mean |bob_correct - charlie_correct|
    double mean_bob_correct = 0;
    double mean_charlie_correct = 0;
    Proportion exactly_one_accepts;
};

/// Charlie withholds the qubit of unlocking step `step`; statistics of the
/// resulting correct-bit gap.
AbortAdvantage estimate_abort_advantage(std::size_t n, std::size_t s, std::size_t step, double alpha,
                                        std::uint64_t trials, std::uint64_t seed);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_FAIR_H
