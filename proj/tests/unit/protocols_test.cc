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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qsdc/protocols/combined.h"
#include "qsdc/protocols/fair.h"
#include "qsdc/protocols/hiding.h"
#include "qsdc/protocols/sdc_basic.h"
#include "qsdc/protocols/secure.h"
#include "qsdc/protocols/teleport.h"
#include "qsdc/qcore/errors.h"
#include "support/dense_oracle.h"

namespace qsdc::protocols {
namespace {

using netsim::EventKind;

TEST(SdcBasic, BellDcnotN4DecodesInputs) {
    SdcResult r = run_sdc_basic({Family::kBell, Locking::kDcnot, 4, 7}, {1, 2}, {3, 0});
    EXPECT_EQ(r.bob_decoded, (EncodedSymbols{1, 2}));
    EXPECT_EQ(r.charlie_decoded, (EncodedSymbols{3, 0}));
}

TEST(SdcBasic, ZeroSymbolsEveryFamily) {
    for (Family f : {Family::kBell, Family::kW, Family::kGhz}) {
        SdcResult r = run_sdc_basic({f, Locking::kQft2, 2, 1}, {0, 0}, {0, 0});
        EXPECT_EQ(r.bob_decoded, (EncodedSymbols{0, 0}));
        EXPECT_EQ(r.charlie_decoded, (EncodedSymbols{0, 0}));
    }
}

TEST(SdcBasic, WSwapN2) {
    SdcResult r = run_sdc_basic({Family::kW, Locking::kSwap, 2, 3}, {1, 1}, {0, 1});
    EXPECT_EQ(r.bob_decoded, (EncodedSymbols{1, 1}));
    EXPECT_EQ(r.charlie_decoded, (EncodedSymbols{0, 1}));
}

TEST(SdcBasic, RejectsOutOfRangeSymbols) {
    EXPECT_THROW(run_sdc_basic({Family::kBell, Locking::kDcnot, 2, 0}, {2, 0}, {0, 0}), SymbolError);
    EXPECT_THROW(run_sdc_basic({Family::kBell, Locking::kDcnot, 3, 0}, {0, 0}, {0, 0}), DimError);
}

TEST(SdcBasic, LogRecordsConfigAndEndsCleanly) {
    SdcResult r = run_sdc_basic({Family::kGhz, Locking::kDcnot, 4, 11}, {2, 3}, {1, 1});
    EXPECT_EQ(r.log.config().at("protocol"), "sdc");
    EXPECT_EQ(r.log.config().at("seed"), 11);
    for (const auto& e : r.log.events()) EXPECT_NE(e.kind, EventKind::kAbort);
}

TEST(SwapDetain, BobReadsHisMessage) {
    SwapDetainResult r = swap_detain_attack({Family::kBell, Locking::kSwap, 2, 5}, {1, 0}, {1, 1});
    EXPECT_TRUE(r.bob_decoded_correct);
}

TEST(SwapDetain, NeedsSwapLocking) {
    EXPECT_THROW(swap_detain_attack({Family::kBell, Locking::kDcnot, 2, 5}, {1, 0}, {1, 1}), ConfigError);
}

TEST(SwapDetain, HonestSwapRunIsCorrectForBoth) {
    SdcResult r = run_sdc_basic({Family::kBell, Locking::kSwap, 2, 5}, {1, 0}, {1, 1});
    EXPECT_EQ(r.bob_decoded, (EncodedSymbols{1, 0}));
    EXPECT_EQ(r.charlie_decoded, (EncodedSymbols{1, 1}));
}

TEST(Fair, HonestRunCompletesWithAllBits) {
    FairConfig cfg;
    cfg.n = 2;
    cfg.s = 4;
    cfg.b = {3, 1};
    cfg.c = {2, 2};
    cfg.seed = 9;
    FairResult r = run_sdc_fair(cfg);
    EXPECT_TRUE(r.completed);
    EXPECT_FALSE(r.detected_at_step.has_value());
    EXPECT_EQ(r.bob_correct_bits, 4u);
    EXPECT_EQ(r.charlie_correct_bits, 4u);
    EXPECT_TRUE(r.bob_accepts);
    EXPECT_TRUE(r.charlie_accepts);
    EXPECT_EQ(r.controls_bob.size(), 4u);
}

TEST(Fair, RejectsQftAndBadAlpha) {
    FairConfig cfg;
    cfg.locking = Locking::kQft2;
    EXPECT_THROW(run_sdc_fair(cfg), ConfigError);
    cfg.locking = Locking::kDcnot;
    cfg.alpha = 0.5;
    EXPECT_THROW(run_sdc_fair(cfg), ConfigError);
    cfg.alpha = 1.0;
    EXPECT_THROW(run_sdc_fair(cfg), ConfigError);
}

TEST(Fair, RejectsAdversaryStepOutOfRange) {
    FairConfig cfg;
    cfg.adversary = {CharlieStrategy::kAbortAt, 7};  // n + s = 6
    EXPECT_THROW(run_sdc_fair(cfg), ConfigError);
}

TEST(Fair, WithholdingLeavesBobShortOfOneQubit) {
    FairConfig cfg;
    cfg.n = 2;
    cfg.s = 0;
    cfg.b = {3, 3};
    cfg.c = {0, 0};
    cfg.adversary = {CharlieStrategy::kAbortAt, 2};
    cfg.seed = 4;
    FairResult r = run_sdc_fair(cfg);
    EXPECT_FALSE(r.completed);
    EXPECT_EQ(r.aborted_by, "CHARLIE");
    // Charlie unlocked both pairs and keeps every message qubit.
    EXPECT_EQ(r.charlie_correct_bits, 4u);
}

TEST(Fair, RandomStateCheatingIsEventuallyCaught) {
    int caught = 0;
    for (std::uint64_t seed = 0; seed < 40; seed++) {
        FairConfig cfg;
        cfg.s = 8;
        cfg.adversary = {CharlieStrategy::kRandomState, 1};
        cfg.seed = seed;
        FairResult r = run_sdc_fair(cfg);
        if (r.detected_by == std::string("BOB")) caught++;
    }
    // 1 - 2^-8 per run; all 40 is overwhelmingly likely.
    EXPECT_GE(caught, 38);
}

TEST(Fair, DetectionCurveNeedsEnoughTrials) {
    EXPECT_THROW(estimate_detection_curve(2, 4, {CharlieStrategy::kRandomState, 1}, 999, 1), ConfigError);
}

TEST(Fair, HonestDetectionCurveIsZero) {
    auto curve = estimate_detection_curve(1, 2, {}, 1000, 3);
    ASSERT_EQ(curve.size(), 2u);
    for (const auto& p : curve) EXPECT_EQ(p.detected.successes, 0u);
}

TEST(Fair, MeetsAlphaThreshold) {
    EXPECT_TRUE(meets_alpha(3, 4, 0.75));
    EXPECT_FALSE(meets_alpha(2, 4, 0.75));
    EXPECT_FALSE(meets_alpha(3, 4, 0.76));
}

TEST(Secure, NoDetectQubitsAttackerLearnsUnseen) {
    SecureConfig cfg;
    cfg.n = 1;
    cfg.r = 0;
    cfg.b = {1, 0};
    cfg.c = {1, 1};
    cfg.adversary = BobStrategy::kInterceptResend;
    cfg.seed = 2;
    SecureResult r = run_sdc_secure(cfg);
    EXPECT_FALSE(r.alice_detected);
    ASSERT_TRUE(r.attacker_learned.has_value());
    EXPECT_EQ(*r.attacker_learned, cfg.b);
}

TEST(Secure, HonestWithManyDetectQubits) {
    SecureConfig cfg;
    cfg.n = 2;
    cfg.r = 16;
    cfg.b = {2, 1};
    cfg.c = {3, 3};
    cfg.seed = 8;
    SecureResult r = run_sdc_secure(cfg);
    EXPECT_FALSE(r.alice_detected);
    EXPECT_TRUE(r.bob_decoded_ok);
    EXPECT_TRUE(r.charlie_decoded_ok);
    EXPECT_EQ(r.detect_bob.size(), 16u);
}

TEST(Secure, RevealComesAfterBothAcks) {
    SecureConfig cfg;
    cfg.seed = 3;
    SecureResult r = run_sdc_secure(cfg);
    int acks = 0;
    bool revealed = false;
    for (const auto& e : r.log.events()) {
        if (e.kind != EventKind::kSend) continue;
        if (e.detail.find("\"ack\"") != std::string::npos) acks++;
        if (e.detail.find("\"reveal\"") != std::string::npos) {
            EXPECT_EQ(acks, 2);
            revealed = true;
        }
    }
    EXPECT_TRUE(revealed);
}

TEST(Combined, HonestRun) {
    CombinedConfig cfg;
    cfg.b = {1, 3};
    cfg.c = {0, 2};
    cfg.seed = 12;
    CombinedResult r = run_sdc_combined(cfg);
    EXPECT_TRUE(r.completed);
    EXPECT_FALSE(r.alice_detected);
    EXPECT_EQ(r.bob_decoded, cfg.b);
    EXPECT_EQ(r.charlie_decoded, cfg.c);
    EXPECT_TRUE(detection_precedes_unlocking(r.log));
}

TEST(Combined, InterceptionCaughtBeforeUnlocking) {
    int detected = 0;
    for (std::uint64_t seed = 0; seed < 30; seed++) {
        CombinedConfig cfg;
        cfg.r = 8;
        cfg.bob = BobStrategy::kInterceptResend;
        cfg.seed = seed;
        CombinedResult r = run_sdc_combined(cfg);
        if (r.alice_detected) {
            detected++;
            EXPECT_TRUE(detection_precedes_unlocking(r.log));
            for (const auto& e : r.log.events()) {
                if (e.kind == EventKind::kOperation && e.from == "CHARLIE") {
                    EXPECT_EQ(e.detail.find("unlock_pair"), std::string::npos);
                }
            }
        }
    }
    EXPECT_GT(detected, 0);
}

TEST(Combined, CheatingDuringUnlockingCaughtByControls) {
    int caught = 0;
    for (std::uint64_t seed = 0; seed < 30; seed++) {
        CombinedConfig cfg;
        cfg.s = 8;
        cfg.charlie = {CharlieStrategy::kRandomState, 1};
        cfg.seed = seed;
        CombinedResult r = run_sdc_combined(cfg);
        EXPECT_FALSE(r.alice_detected);
        if (r.detected_by == std::string("BOB")) caught++;
    }
    EXPECT_GE(caught, 28);
}

TEST(Teleport, TwoQubitsZeroAndPlus) {
    const double h = 1.0 / std::sqrt(2.0);
    for (std::uint32_t x1 = 0; x1 < 2; x1++) {
        for (std::uint32_t y2 = 0; y2 < 2; y2++) {
            TeleportConfig cfg;
            cfg.M = 2;
            cfg.N = 2;
            cfg.inputs = {{1, 0}, {h, h}};
            cfg.outcomes = std::vector<EncodedSymbols>{{x1, 1}, {1, y2}};
            TeleportResult r = run_teleport(cfg);
            ASSERT_EQ(r.fidelities.size(), 2u);
            EXPECT_NEAR(r.fidelities[0], 1.0, 1e-9);
            EXPECT_NEAR(r.fidelities[1], 1.0, 1e-9);
        }
    }
}

TEST(Teleport, ThreeReceiversRandomInputs) {
    RandomSource rng(17);
    TeleportConfig cfg;
    cfg.M = 3;
    cfg.N = 2;
    for (int t = 0; t < 3; t++) cfg.inputs.push_back(random_qunit(rng, 2));
    cfg.seed = 5;
    TeleportResult r = run_teleport(cfg);
    for (double f : r.fidelities) EXPECT_GE(f, 1.0 - 1e-9);
}

TEST(Teleport, Validation) {
    TeleportConfig cfg;
    cfg.M = 1;
    cfg.inputs = {{1, 0}};
    EXPECT_THROW(run_teleport(cfg), ConfigError);
    cfg.M = 2;
    cfg.inputs = {{1, 0}, {1, 1}};
    EXPECT_THROW(run_teleport(cfg), ConfigError);
    cfg.M = 5;
    cfg.N = 4;
    EXPECT_THROW(run_teleport(cfg), CapacityError);
}

TEST(Hiding, BellDcnotN2) {
    HidingReport r = verify_locking_hiding(Family::kBell, Locking::kDcnot, 2);
    EXPECT_EQ(r.encodings, 16u);
    EXPECT_LE(r.max_distance, 1e-9);
}

TEST(Hiding, WTheoryMatchesWrittenOutMatrix) {
    // (1/2)[|00><00| + 1/2 (|01>+|10>)(<01|+<10|)] for N = 2.
    testing::Mat want = testing::Mat::Zero(4, 4);
    want(0, 0) = 0.5;
    want(1, 1) = want(2, 2) = want(1, 2) = want(2, 1) = 0.25;
    EXPECT_LE((receiver_theory(Family::kW, 2).matrix() - want).norm(), 1e-15);
    HidingReport r = verify_locking_hiding(Family::kW, Locking::kDcnot, 2);
    EXPECT_LE(r.max_distance, 1e-9);
}

TEST(Hiding, BellQftN4) {
    EXPECT_LE(verify_locking_hiding(Family::kBell, Locking::kQft2, 4).max_distance, 1e-9);
}

TEST(Hiding, RejectsOtherDimensions) {
    EXPECT_THROW(verify_locking_hiding(Family::kBell, Locking::kDcnot, 8), DimError);
}

TEST(PartialUnlock, LockedRevealsNothingAndFullUnlockRevealsAll) {
    EXPECT_LE(partial_unlock_hiding_check(2, 0, Locking::kDcnot, 0).distance_to_locked, 1e-9);
    EXPECT_LE(partial_unlock_hiding_check(2, 0, Locking::kDcnot, 0).max_pairwise_distance, 1e-9);
    PartialUnlockReport full = partial_unlock_hiding_check(2, 0, Locking::kDcnot, 2);
    EXPECT_NEAR(full.max_pairwise_distance, 1.0, 1e-9);
    EXPECT_NEAR(full.distance_to_locked, 1.0 - 1.0 / 16.0, 1e-9);
}

TEST(PartialUnlock, MonotoneInUnlockedPairs) {
    for (Locking l : {Locking::kDcnot, Locking::kSwap}) {
        double prev = -1;
        for (std::size_t k = 0; k <= 2; k++) {
            const double d = partial_unlock_hiding_check(2, 1, l, k).distance_to_locked;
            EXPECT_GE(d, prev - 1e-12);
            prev = d;
        }
    }
}

TEST(PartialUnlock, Validation) {
    EXPECT_THROW(partial_unlock_hiding_check(2, 0, Locking::kQft2, 1), ConfigError);
    EXPECT_THROW(partial_unlock_hiding_check(2, 0, Locking::kDcnot, 3), ConfigError);
    EXPECT_THROW(partial_unlock_hiding_check(4, 4, Locking::kDcnot, 1), CapacityError);
}

TEST(Stats, WilsonInterval) {
    // Score interval written out for 50/100 at the 99% quantile.
    const double z = 2.5758293035489004, n = 100, ph = 0.5;
    const double denom = 1 + z * z / n;
    const double center = (ph + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
    Proportion p = wilson(50, 100);
    EXPECT_DOUBLE_EQ(p.p_hat, 0.5);
    EXPECT_NEAR(p.lo, center - half, 1e-12);
    EXPECT_NEAR(p.hi, center + half, 1e-12);
    EXPECT_NEAR(p.lo, 0.3753, 1e-4);
    EXPECT_TRUE(p.contains(0.5));
    EXPECT_TRUE(separated_below(wilson(10, 1000), wilson(100, 1000)));
}

TEST(Stats, RunTrialsKeepsOrderAcrossWorkers) {
    auto out = run_trials(257, [](std::uint64_t t) { return t * t; });
    for (std::uint64_t t = 0; t < out.size(); t++) EXPECT_EQ(out[t], t * t);
}

TEST(Determinism, FairRunReproducesLog) {
    FairConfig cfg;
    cfg.s = 6;
    cfg.adversary = {CharlieStrategy::kRandomState, 2};
    cfg.seed = 77;
    FairResult a = run_sdc_fair(cfg);
    FairResult b = run_sdc_fair(cfg);
    EXPECT_EQ(a.log, b.log);
    std::ostringstream sa, sb;
    a.log.write(sa);
    b.log.write(sb);
    EXPECT_EQ(sa.str(), sb.str());
}

}  // namespace
}  // namespace qsdc::protocols
