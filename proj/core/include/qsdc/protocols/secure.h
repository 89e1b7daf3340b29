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

#ifndef QSDC_PROTOCOLS_SECURE_H
#define QSDC_PROTOCOLS_SECURE_H

#include <optional>

#include "qsdc/protocols/common.h"
#include "qsdc/protocols/stats.h"

namespace qsdc::protocols {

/// Quantum-level locking, r detect qubits per stream, acknowledgements,
/// then Alice reveals detect positions and bases and checks the reported
/// results before the receivers unlock jointly.
struct SecureConfig {
    std::size_t n = 2;
    std::size_t r = 4;
    Locking locking = Locking::kDcnot;
    Family family = Family::kBell;
    EncodedSymbols b;
    EncodedSymbols c;
    BobStrategy adversary = BobStrategy::kHonest;
    std::uint64_t seed = 0;
};

struct SecureResult {
    bool alice_detected = false;
    std::optional<EncodedSymbols> attacker_learned;
    bool bob_decoded_ok = false;
    bool charlie_decoded_ok = false;
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    InsertSpec detect_bob;
    InsertSpec detect_charlie;
    EventLog log;
};

SecureResult run_sdc_secure(const SecureConfig& cfg);

struct SecureStats {
    std::size_t r = 0;
    Proportion detected;
    Proportion learned;  // attacker read b exactly
};

/// Naive intercept-resend against r detect qubits; trial t uses seed + t
/// and random symbols.
SecureStats estimate_secure_detection(std::size_t n, std::size_t r, Locking locking, Family family,
                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_SECURE_H
