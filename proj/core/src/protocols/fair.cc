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

#include "qsdc/protocols/fair.h"

#include <cmath>

#include "qsdc/qcore/errors.h"
#include "stream_engine.h"

namespace qsdc::protocols {

namespace {

EncodedSymbols random_symbols(RandomSource& rng, std::uint32_t N) {
    const auto x = static_cast<std::uint32_t>(rng.below(N));
    const auto y = static_cast<std::uint32_t>(rng.below(N));
    return {x, y};
}

}  // namespace

bool meets_alpha(std::size_t correct, std::size_t total, double alpha) {
    return static_cast<double>(correct) >= alpha * static_cast<double>(total) - 1e-12;
}

FairResult run_sdc_fair(const FairConfig& cfg) {
    if (!(cfg.alpha > 0.5 && cfg.alpha < 1.0)) {
        throw ConfigError("alpha must lie in (1/2, 1)");
    }
    detail::StreamConfig sc;
    sc.protocol = "fair";
    sc.family = cfg.family;
    sc.locking = cfg.locking;
    sc.n = cfg.n;
    sc.s = cfg.s;
    sc.b = cfg.b;
    sc.c = cfg.c;
    sc.stepwise = true;
    sc.charlie = cfg.adversary;
    sc.seed = cfg.seed;
    detail::StreamOutcome o = detail::run_stream_protocol(sc);

    FairResult r;
    r.completed = o.completed;
    r.aborted_by = o.aborted_by;
    r.detected_at_step = o.detected_at_step;
    r.detected_at_check = o.detected_at_check;
    r.detected_by = o.detected_by;
    r.bob_decoded = o.bob_decoded;
    r.charlie_decoded = o.charlie_decoded;
    r.bob_correct_bits = o.bob_correct_bits;
    r.charlie_correct_bits = o.charlie_correct_bits;
    r.alpha = cfg.alpha;
    r.bob_accepts = meets_alpha(o.bob_correct_bits, 2 * cfg.n, cfg.alpha);
    r.charlie_accepts = meets_alpha(o.charlie_correct_bits, 2 * cfg.n, cfg.alpha);
    r.controls_bob = std::move(o.controls_bob);
    r.controls_charlie = std::move(o.controls_charlie);
    r.log = std::move(o.log);
    return r;
}

std::vector<DetectionPoint> estimate_detection_curve(std::size_t n, std::size_t s, CharlieAdversary adversary,
                                                     std::uint64_t trials, std::uint64_t seed, Locking locking) {
    if (trials < 1000) {
        throw ConfigError("detection curves need at least 1000 trials");
    }
    if (s == 0) {
        throw ConfigError("detection curves need s >= 1");
    }
    const auto N = static_cast<std::uint32_t>(std::uint32_t{1} << n);
    // First check index at which Bob caught Charlie; 0 when he never did.
    auto first_check = run_trials(trials, [&](std::uint64_t t) -> std::size_t {
        RandomSource trial = RandomSource::for_trial(seed, t);
        RandomSource symbols(trial.next_u64());
        FairConfig cfg;
        cfg.n = n;
        cfg.s = s;
        cfg.locking = locking;
        cfg.b = random_symbols(symbols, N);
        cfg.c = random_symbols(symbols, N);
        cfg.adversary = adversary;
        cfg.seed = seed + t;
        FairResult r = run_sdc_fair(cfg);
        if (r.detected_by == std::string("BOB") && r.detected_at_check) {
            return *r.detected_at_check;
        }
        return 0;
    });
    std::vector<DetectionPoint> curve;
    for (std::size_t m = 1; m <= s; m++) {
        std::uint64_t hits = 0;
        for (std::size_t c : first_check) {
            hits += (c != 0 && c <= m) ? 1 : 0;
        }
        curve.push_back({m, wilson(hits, trials)});
    }
    return curve;
}

AbortAdvantage estimate_abort_advantage(std::size_t n, std::size_t s, std::size_t step, double alpha,
                                        std::uint64_t trials, std::uint64_t seed) {
    const auto N = static_cast<std::uint32_t>(std::uint32_t{1} << n);
    struct Sample {
        std::size_t bob = 0;
        std::size_t charlie = 0;
        int exactly_one = 0;
    };
    auto samples = run_trials(trials, [&](std::uint64_t t) {
        RandomSource trial = RandomSource::for_trial(seed, t);
        RandomSource symbols(trial.next_u64());
        FairConfig cfg;
        cfg.n = n;
        cfg.s = s;
        cfg.b = random_symbols(symbols, N);
        cfg.c = random_symbols(symbols, N);
        cfg.adversary = {CharlieStrategy::kAbortAt, step};
        cfg.alpha = alpha;
        cfg.seed = seed + t;
        FairResult r = run_sdc_fair(cfg);
        return Sample{r.bob_correct_bits, r.charlie_correct_bits, r.bob_accepts != r.charlie_accepts ? 1 : 0};
    });
    AbortAdvantage a;
    a.step = step;
    double diff = 0, bob = 0, charlie = 0;
    std::uint64_t one = 0;
    for (const Sample& x : samples) {
        diff += std::abs(static_cast<double>(x.bob) - static_cast<double>(x.charlie));
        bob += static_cast<double>(x.bob);
        charlie += static_cast<double>(x.charlie);
        one += static_cast<std::uint64_t>(x.exactly_one);
    }
    const double k = static_cast<double>(std::max<std::uint64_t>(trials, 1));
    a.mean_abs_difference = diff / k;
    a.mean_bob_correct = bob / k;
    a.mean_charlie_correct = charlie / k;
    a.exactly_one_accepts = wilson(one, trials);
    return a;
}

}  // namespace qsdc::protocols
