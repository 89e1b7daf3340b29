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

#ifndef QSDC_PROTOCOLS_HIDING_H
#define QSDC_PROTOCOLS_HIDING_H

#include "qsdc/protocols/common.h"
#include "qsdc/qcore/density.h"

namespace qsdc::protocols {

/// Reduced state of one sender quNit together with its receiver register
/// after locking, independent of the encoded symbols:
/// I/N (x) rho_receiver, where rho_receiver is I/N for Bell, the diagonal
/// (1/N) sum |jj><jj| for GHZ and the two-term W expression.
DensityMatrix locked_theory(Family family, std::uint32_t N);

/// Reduced density of the receiver register of the (0,0) channel.
DensityMatrix receiver_theory(Family family, std::uint32_t N);

struct HidingReport {
    double max_distance = 0;
    EncodedSymbols worst_b;
    EncodedSymbols worst_c;
    std::size_t encodings = 0;
};

/// Exhaustive over all N^4 encodings (b, c): max trace distance of the
/// post-locking A1B and A2C states from locked_theory. DimError unless N
/// is 2 or 4.
HidingReport verify_locking_hiding(Family family, Locking locking, std::uint32_t N);

struct PartialUnlockReport {
    std::size_t k = 0;
    double distance_to_locked = 0;     // max over encodings, vs the k=0 average
    double max_pairwise_distance = 0;  // over b != b' with c fixed
};

/// Bell channels, pairwise lock over n message qubits followed by s
/// control qubits per stream. The first k message pairs are unlocked and
/// Bob's reduced state (his stream and B) is compared across encodings.
/// ConfigError for QFT2 or k > n; CapacityError above 10 kept qubits.
PartialUnlockReport partial_unlock_hiding_check(std::size_t n, std::size_t s, Locking locking, std::size_t k);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_HIDING_H
