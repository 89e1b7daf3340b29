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

#ifndef QSDC_PROTOCOLS_COMBINED_H
#define QSDC_PROTOCOLS_COMBINED_H

#include <optional>
#include <string>

#include "qsdc/protocols/common.h"

namespace qsdc::protocols {

struct CombinedConfig {
    std::size_t n = 2;
    std::size_t s = 4;
    std::size_t r = 4;
    Locking locking = Locking::kDcnot;
    Family family = Family::kBell;
    EncodedSymbols b;
    EncodedSymbols c;
    CharlieAdversary charlie;
    BobStrategy bob = BobStrategy::kHonest;
    double alpha = 0.75;
    std::uint64_t seed = 0;
};

/// Pairwise lock of message and control qubits, detect qubits inserted on
/// top, the detect check with Alice, then step-wise unlocking.
struct CombinedResult {
    bool completed = false;
    std::optional<std::string> aborted_by;
    bool alice_detected = false;
    std::optional<EncodedSymbols> attacker_learned;
    std::optional<std::size_t> detected_at_step;
    std::optional<std::size_t> detected_at_check;
    std::optional<std::string> detected_by;
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    std::size_t bob_correct_bits = 0;
    std::size_t charlie_correct_bits = 0;
    bool bob_accepts = false;
    bool charlie_accepts = false;
    InsertSpec controls_bob;
    InsertSpec controls_charlie;
    InsertSpec detect_bob;
    InsertSpec detect_charlie;
    EventLog log;
};

/// ConfigError for QFT2, alpha outside (1/2, 1) or a bad adversary step.
CombinedResult run_sdc_combined(const CombinedConfig& cfg);

/// True when Alice's detect check is logged and no receiver unlocking
/// operation precedes it.
bool detection_precedes_unlocking(const EventLog& log);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_COMBINED_H
