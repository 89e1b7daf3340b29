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

#include "qsdc/protocols/sdc_basic.h"

#include "qsdc/channels/channels.h"
#include "qsdc/qcore/errors.h"
#include "stream_engine.h"

namespace qsdc::protocols {

namespace {

detail::StreamConfig basic_stream(const SdcConfig& cfg, EncodedSymbols b, EncodedSymbols c) {
    detail::StreamConfig sc;
    sc.protocol = "sdc";
    sc.family = cfg.family;
    sc.locking = cfg.locking;
    sc.n = channels::qubits_per_qunit(cfg.N);
    sc.b = b;
    sc.c = c;
    sc.seed = cfg.seed;
    return sc;
}

}  // namespace

SdcResult run_sdc_basic(const SdcConfig& cfg, EncodedSymbols b, EncodedSymbols c) {
    detail::StreamOutcome o = detail::run_stream_protocol(basic_stream(cfg, b, c));
    return {o.bob_decoded, o.charlie_decoded, std::move(o.log)};
}

SwapDetainResult swap_detain_attack(const SdcConfig& cfg, EncodedSymbols b, EncodedSymbols c) {
    if (cfg.locking != Locking::kSwap) {
        throw ConfigError("the swap-detain attack needs swap locking");
    }
    detail::StreamConfig sc = basic_stream(cfg, b, c);
    sc.bob = BobStrategy::kSwapDetain;
    detail::StreamOutcome o = detail::run_stream_protocol(sc);
    SwapDetainResult r;
    r.bob_decoded = o.bob_decoded;
    r.charlie_decoded = o.charlie_decoded;
    r.bob_decoded_correct = o.bob_decoded == b;
    r.charlie_decoded_correct = o.charlie_decoded == c;
    r.log = std::move(o.log);
    return r;
}

SwapDetainStats estimate_swap_detain(Family family, std::uint32_t N, std::uint64_t trials, std::uint64_t seed) {
    struct Sample {
        int bob = 0;
        int charlie = 0;
    };
    auto samples = run_trials(trials, [&](std::uint64_t t) {
        RandomSource trial = RandomSource::for_trial(seed, t);
        RandomSource symbols(trial.next_u64());
        const EncodedSymbols b{static_cast<std::uint32_t>(symbols.below(N)), static_cast<std::uint32_t>(symbols.below(N))};
        const EncodedSymbols c{static_cast<std::uint32_t>(symbols.below(N)), static_cast<std::uint32_t>(symbols.below(N))};
        SwapDetainResult r = swap_detain_attack({family, Locking::kSwap, N, seed + t}, b, c);
        return Sample{r.bob_decoded_correct ? 1 : 0, r.charlie_decoded_correct ? 1 : 0};
    });
    std::uint64_t bob = 0, charlie = 0;
    for (const Sample& s : samples) {
        bob += static_cast<std::uint64_t>(s.bob);
        charlie += static_cast<std::uint64_t>(s.charlie);
    }
    return {wilson(bob, trials), wilson(charlie, trials)};
}

}  // namespace qsdc::protocols
