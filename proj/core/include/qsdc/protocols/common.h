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

#ifndef QSDC_PROTOCOLS_COMMON_H
#define QSDC_PROTOCOLS_COMMON_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsdc/channels/channels.h"
#include "qsdc/netsim/event_log.h"
#include "qsdc/qcore/measure.h"

namespace qsdc::protocols {

using channels::Family;
using channels::Locking;
using netsim::EventLog;

/// Interleaved single-qubit states in a stream (control or detect qubits).
/// positions are 0-based stream indices in ascending order; states[k] sits
/// at positions[k].
struct InsertSpec {
    std::vector<std::uint32_t> positions;
    std::vector<PureQubit> states;

    std::size_t size() const { return positions.size(); }
    /// Index k with positions[k] == pos, if any.
    std::optional<std::size_t> find(std::uint32_t pos) const;
};

/// `count` distinct positions in [0, length) with states drawn uniformly from S.
InsertSpec random_insert(RandomSource& rng, std::uint32_t length, std::uint32_t count);

/// JSON with 1-based positions, matching step numbering in reports.
nlohmann::json to_json(const InsertSpec& spec);
/// Inverse of to_json. FormatError on malformed input.
InsertSpec insert_spec_from_json(const nlohmann::json& j);

/// How Charlie behaves during step-wise unlocking.
enum class CharlieStrategy {
    kHonest,
    kRandomState,  // from `step` on: keep the real qubit, return a fresh random state from S
    kAbortAt,      // at `step`: unlock, keep the qubit, stop
};

struct CharlieAdversary {
    CharlieStrategy strategy = CharlieStrategy::kHonest;
    std::size_t step = 1;  // 1-based unlocking step

    bool honest() const { return strategy == CharlieStrategy::kHonest; }
};

/// How Bob behaves on the channel from Alice to Charlie.
enum class BobStrategy {
    kHonest,
    kInterceptResend,  // naive positional intercept-resend
    kSwapDetain,       // keeps Charlie's quNit during a joint SWAP unlock, returns a fake
};

std::string_view to_string(CharlieStrategy s);
std::string_view to_string(BobStrategy s);
/// Inverse of to_string; ConfigError for unknown names.
CharlieStrategy parse_charlie_strategy(std::string_view s);
BobStrategy parse_bob_strategy(std::string_view s);

/// Bits of `got` equal to `want`, over the n bits of x then the n bits of y.
std::size_t correct_bits(EncodedSymbols got, EncodedSymbols want, std::size_t n);

/// SymbolError unless both symbols are below N.
void check_symbols(EncodedSymbols sym, std::uint32_t N);

nlohmann::json to_json(EncodedSymbols sym);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_COMMON_H
