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

#ifndef QSDC_PROTOCOLS_DECODE_H
#define QSDC_PROTOCOLS_DECODE_H

#include <limits>
#include <vector>

#include "qsdc/netsim/network.h"
#include "qsdc/protocols/common.h"

namespace qsdc::protocols::detail {

inline constexpr Qubit kNoQubit = std::numeric_limits<Qubit>::max();

struct DecodeResult {
    EncodedSymbols symbols;
    std::size_t correct_bits = 0;
    std::size_t missing_qubits = 0;
    bool complement = false;
};

/// Family-basis measurement of the message qubits a party holds together
/// with its receiver register. Message slots the party does not hold (or
/// kNoQubit) are replaced by fresh |0> qubits and the x and y bits of that
/// digit are guessed with a fair coin. A COMPLEMENT outcome is an
/// InternalError in an honest run and a full guess otherwise.
DecodeResult decode_held(netsim::PartyContext& ctx, const std::vector<Qubit>& message,
                         const std::vector<Qubit>& receiver, const DecodingBasis& basis, EncodedSymbols want,
                         std::size_t n, bool honest);

}  // namespace qsdc::protocols::detail

#endif  // QSDC_PROTOCOLS_DECODE_H
