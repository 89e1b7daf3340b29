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

#include "qsdc/protocols/secure.h"

#include "stream_engine.h"

namespace qsdc::protocols {

SecureResult run_sdc_secure(const SecureConfig& cfg) {
    detail::StreamConfig sc;
    sc.protocol = "secure";
    sc.family = cfg.family;
    sc.locking = cfg.locking;
    sc.n = cfg.n;
    sc.r = cfg.r;
    sc.b = cfg.b;
    sc.c = cfg.c;
    sc.detect_phase = true;
    sc.bob = cfg.adversary;
    sc.seed = cfg.seed;
    detail::StreamOutcome o = detail::run_stream_protocol(sc);

    SecureResult r;
    r.alice_detected = o.alice_detected;
    r.attacker_learned = o.attacker_learned;
    if (!o.alice_detected) {
        r.bob_decoded = o.bob_decoded;
        r.charlie_decoded = o.charlie_decoded;
        r.bob_decoded_ok = o.bob_decoded == cfg.b && o.bob_missing_qubits == 0;
        r.charlie_decoded_ok = o.charlie_decoded == cfg.c && o.charlie_missing_qubits == 0;
    }
    r.detect_bob = std::move(o.detect_bob);
    r.detect_charlie = std::move(o.detect_charlie);
    r.log = std::move(o.log);
    return r;
}

SecureStats estimate_secure_detection(std::size_t n, std::size_t r, Locking locking, Family family,
                                      std::uint64_t trials, std::uint64_t seed) {
    const auto N = static_cast<std::uint32_t>(std::uint32_t{1} << n);
    struct Sample {
        int detected = 0;
        int learned = 0;
    };
    auto samples = run_trials(trials, [&](std::uint64_t t) {
        RandomSource trial = RandomSource::for_trial(seed, t);
        RandomSource symbols(trial.next_u64());
        SecureConfig cfg;
        cfg.n = n;
        cfg.r = r;
        cfg.locking = locking;
        cfg.family = family;
        cfg.b = {static_cast<std::uint32_t>(symbols.below(N)), static_cast<std::uint32_t>(symbols.below(N))};
        cfg.c = {static_cast<std::uint32_t>(symbols.below(N)), static_cast<std::uint32_t>(symbols.below(N))};
        cfg.adversary = BobStrategy::kInterceptResend;
        cfg.seed = seed + t;
        SecureResult res = run_sdc_secure(cfg);
        return Sample{res.alice_detected ? 1 : 0, res.attacker_learned == cfg.b ? 1 : 0};
    });
    std::uint64_t detected = 0, learned = 0;
    for (const Sample& s : samples) {
        detected += static_cast<std::uint64_t>(s.detected);
        learned += static_cast<std::uint64_t>(s.learned);
    }
    return {r, wilson(detected, trials), wilson(learned, trials)};
}

}  // namespace qsdc::protocols
