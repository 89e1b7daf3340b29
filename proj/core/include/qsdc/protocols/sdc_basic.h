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

#ifndef QSDC_PROTOCOLS_SDC_BASIC_H
#define QSDC_PROTOCOLS_SDC_BASIC_H

#include "qsdc/protocols/common.h"
#include "qsdc/protocols/stats.h"

namespace qsdc::protocols {

struct SdcConfig {
    Family family = Family::kBell;
    Locking locking = Locking::kDcnot;
    std::uint32_t N = 2;
    std::uint64_t seed = 0;
};

struct SdcResult {
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    EventLog log;
};

/// Encode, lock, send A1 to Bob and A2 to Charlie, unlock jointly, decode.
/// An honest run that fails to decode raises InternalError.
SdcResult run_sdc_basic(const SdcConfig& cfg, EncodedSymbols b, EncodedSymbols c);

struct SwapDetainResult {
    bool bob_decoded_correct = false;
    bool charlie_decoded_correct = false;
    EncodedSymbols bob_decoded;
    EncodedSymbols charlie_decoded;
    EventLog log;
};

/// Basic SDC with SWAP locking where Bob keeps the quNit that should go
/// back to Charlie and returns a uniformly random basis-state fake.
/// ConfigError unless cfg.locking is SWAP.
SwapDetainResult swap_detain_attack(const SdcConfig& cfg, EncodedSymbols b, EncodedSymbols c);

struct SwapDetainStats {
    Proportion bob_correct;
    Proportion charlie_correct;
};

/// Random symbols per trial; trial t runs with seed + t.
SwapDetainStats estimate_swap_detain(Family family, std::uint32_t N, std::uint64_t trials, std::uint64_t seed);

}  // namespace qsdc::protocols

#endif  // QSDC_PROTOCOLS_SDC_BASIC_H
