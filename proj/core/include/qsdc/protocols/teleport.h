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

#ifndef QSDC_PROTOCOLS_TELEPORT_H
#define QSDC_PROTOCOLS_TELEPORT_H

#include <optional>
#include <vector>

#include "qsdc/protocols/common.h"

namespace qsdc::protocols {

struct TeleportConfig {
    std::size_t M = 2;
    std::uint32_t N = 2;
    std::vector<Amplitudes> inputs;  // one normalized length-N state per receiver
    /// Forces Alice's Bell outcomes instead of sampling them.
    std::optional<std::vector<EncodedSymbols>> outcomes;
    std::uint64_t seed = 0;
};

struct TeleportResult {
    std::vector<EncodedSymbols> outcomes;  // (x_t, y_t), t ascending
    std::vector<double> fidelities;
    EventLog log;
};

/// Alice locks A_1..A_M with one QFT of dimension N^M, Bell-measures each
/// A_t T_t and sends (x_t, y_t) to BOB_t. The receivers undo the QFT
/// jointly at BOB_1, then BOB_t applies Z^x (X^dagger)^y.
/// ConfigError for M < 2, bad inputs or outcomes; CapacityError when the
/// merged A/B/T factor would exceed the qubit cap.
TeleportResult run_teleport(const TeleportConfig& cfg);

/// Normalized random state of dimension N with Gaussian amplitudes.
Amplitudes random_qunit(RandomSource& rng, std::uint32_t N);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_TELEPORT_H
