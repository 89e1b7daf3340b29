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

#ifndef QSDC_PROTOCOLS_STREAM_ENGINE_H
#define QSDC_PROTOCOLS_STREAM_ENGINE_H

#include <optional>
#include <string>

#include "qsdc/protocols/common.h"

namespace qsdc::protocols::detail {

/// One run of the stream-based protocols. Alice interleaves s control
/// qubits per stream (step-wise mode) and r detect qubits per stream
/// (detect phase), sends the streams to Bob and Charlie, optionally checks
/// the detect qubits, and the receivers unlock either jointly or one pair
/// at a time.
struct StreamConfig {
    std::string protocol;  // recorded in the log config
    Family family = Family::kBell;
    Locking locking = Locking::kDcnot;
    std::size_t n = 1;
    std::size_t s = 0;
    std::size_t r = 0;
    EncodedSymbols b;
    EncodedSymbols c;
    bool stepwise = false;
    bool detect_phase = false;
    CharlieAdversary charlie;
    BobStrategy bob = BobStrategy::kHonest;
    std::uint64_t seed = 0;
};

struct StreamOutcome {
    bool completed = false;
    std::optional<std::string> aborted_by;
    bool alice_detected = false;
    std::optional<std::size_t> detected_at_step;   // 1-based unlocking step
    std::optional<std::size_t> detected_at_check;  // 1-based index among the detecting party's checks
    std::optional<std::string> detected_by;
    std::optional<EncodedSymbols> attacker_learned;
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    std::size_t bob_correct_bits = 0;
    std::size_t charlie_correct_bits = 0;
    std::size_t bob_missing_qubits = 0;
    std::size_t charlie_missing_qubits = 0;
    InsertSpec controls_bob;
    InsertSpec controls_charlie;
    InsertSpec detect_bob;
    InsertSpec detect_charlie;
    EventLog log;
};

StreamOutcome run_stream_protocol(const StreamConfig& cfg);

}  // namespace qsdc::protocols::detail

#endif  // QSDC_PROTOCOLS_STREAM_ENGINE_H
