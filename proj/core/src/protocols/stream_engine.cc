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

#include "stream_engine.h"

#include <memory>

#include "decode.h"
#include "qsdc/netsim/network.h"
#include "qsdc/qcore/errors.h"

namespace qsdc::protocols::detail {

namespace {

using netsim::Envelope;
using netsim::kAlice;
using netsim::kBob;
using netsim::kCharlie;
using netsim::Network;
using netsim::Party;
using netsim::PartyContext;
using netsim::PartyId;
using netsim::StepStatus;

std::vector<Qubit> without_positions(const std::vector<Qubit>& stream, const InsertSpec& spec) {
    std::vector<Qubit> rest;
    for (std::uint32_t j = 0; j < stream.size(); j++) {
        if (!spec.find(j)) {
            rest.push_back(stream[j]);
        }
    }
    return rest;
}

std::vector<Qubit> interleave(const std::vector<Qubit>& rest, const InsertSpec& spec,
                              const std::vector<Qubit>& inserted) {
    std::vector<Qubit> out;
    std::size_t next = 0;
    for (std::uint32_t j = 0; j < rest.size() + spec.size(); j++) {
        if (auto k = spec.find(j)) {
            out.push_back(inserted[*k]);
        } else {
            out.push_back(rest[next++]);
        }
    }
    return out;
}

nlohmann::json bases_json(const InsertSpec& spec) {
    nlohmann::json out = nlohmann::json::array();
    for (PureQubit s : spec.states) {
        out.push_back(to_string(basis_of(s)));
    }
    return out;
}

MeasureBasis parse_basis(const nlohmann::json& j) {
    const auto s = j.get<std::string>();
    if (s == "Z") return MeasureBasis::kZ;
    if (s == "X") return MeasureBasis::kX;
    throw FormatError("unknown basis '" + s + "'");
}

std::string type_of(const Envelope& env) { return env.payload.value("type", std::string()); }

/// Setup facts. Parties read only what the protocol tells them, through
/// their envelopes; the rest is here for the harness.
struct World {
    const StreamConfig& cfg;
    std::uint32_t N = 0;
    std::vector<Qubit> A1, A2, B, C;
    InsertSpec ctrl1, ctrl2, det1, det2;
    std::vector<Qubit> core1, core2, stream1, stream2;
    DecodingBasis basis;
    StreamOutcome& out;

    bool honest_run() const { return cfg.charlie.honest() && cfg.bob == BobStrategy::kHonest; }
};

class Alice : public Party {
   public:
    explicit Alice(World& w) : w_(w) {}
    PartyId id() const override { return kAlice; }

    StepStatus step(PartyContext& ctx) override {
        const StreamConfig& cfg = w_.cfg;
        switch (phase_) {
            case Phase::kStart: {
                if (cfg.stepwise) {
                    ctx.send_classical(kBob, {{"type", "controls"}, {"spec", to_json(w_.ctrl1)}});
                    ctx.send_classical(kCharlie, {{"type", "controls"}, {"spec", to_json(w_.ctrl2)}});
                }
                channels::encode(ctx.operate("encode", w_.A1), cfg.family, w_.A1, cfg.b);
                channels::encode(ctx.operate("encode", w_.A2), cfg.family, w_.A2, cfg.c);
                if (cfg.stepwise) {
                    const PairOp op = channels::lock_step(cfg.locking);
                    for (std::size_t j = 0; j < w_.core1.size(); j++) {
                        const Qubit pair[2] = {w_.core1[j], w_.core2[j]};
                        ctx.operate("lock_pair", pair).apply_pair_step(pair[0], pair[1], op);
                    }
                } else {
                    std::vector<Qubit> both = w_.A1;
                    both.insert(both.end(), w_.A2.begin(), w_.A2.end());
                    channels::lock(ctx.operate("lock", both), cfg.locking, w_.A1, w_.A2);
                }
                ctx.send_qubits(kBob, w_.stream1, {{"type", "stream"}});
                ctx.send_qubits(kCharlie, w_.stream2, {{"type", "stream"}});
                if (!cfg.detect_phase) {
                    return StepStatus::kHalted;
                }
                phase_ = Phase::kAwaitAcks;
                return StepStatus::kProgress;
            }
            case Phase::kAwaitAcks: {
                bool progress = false;
                while (auto env = ctx.receive()) {
                    if (type_of(*env) == "ack") {
                        (env->from == kBob ? ack_bob_ : ack_charlie_) = true;
                        progress = true;
                    }
                }
                if (ack_bob_ && ack_charlie_) {
                    ctx.send_classical(kBob, {{"type", "reveal"},
                                              {"positions", to_json(w_.det1)["positions"]},
                                              {"bases", bases_json(w_.det1)}});
                    ctx.send_classical(kCharlie, {{"type", "reveal"},
                                                  {"positions", to_json(w_.det2)["positions"]},
                                                  {"bases", bases_json(w_.det2)}});
                    phase_ = Phase::kAwaitReports;
                    return StepStatus::kProgress;
                }
                return progress ? StepStatus::kProgress : StepStatus::kBlocked;
            }
            case Phase::kAwaitReports: {
                bool progress = false;
                while (auto env = ctx.receive()) {
                    if (type_of(*env) == "report") {
                        (env->from == kBob ? report_bob_ : report_charlie_) =
                            env->payload.at("bits").get<std::vector<int>>();
                        progress = true;
                    }
                }
                if (!report_bob_ || !report_charlie_) {
                    return progress ? StepStatus::kProgress : StepStatus::kBlocked;
                }
                const std::size_t bad = mismatches(*report_bob_, w_.det1) + mismatches(*report_charlie_, w_.det2);
                ctx.decide({{"detect_check", bad == 0 ? "pass" : "fail"}, {"mismatches", bad}});
                if (bad > 0) {
                    w_.out.alice_detected = true;
                    ctx.abort({{"reason", "detect qubits disturbed"}});
                    return StepStatus::kAborted;
                }
                ctx.send_classical(kBob, {{"type", "verdict"}, {"proceed", true}});
                ctx.send_classical(kCharlie, {{"type", "verdict"}, {"proceed", true}});
                return StepStatus::kHalted;
            }
        }
        throw InternalError("alice: unreachable phase");
    }

   private:
    enum class Phase { kStart, kAwaitAcks, kAwaitReports };

    static std::size_t mismatches(const std::vector<int>& bits, const InsertSpec& spec) {
        if (bits.size() != spec.size()) {
            return spec.size() + 1;
        }
        std::size_t bad = 0;
        for (std::size_t k = 0; k < spec.size(); k++) {
            bad += bits[k] != bit_of(spec.states[k]) ? 1 : 0;
        }
        return bad;
    }

    World& w_;
    Phase phase_ = Phase::kStart;
    bool ack_bob_ = false;
    bool ack_charlie_ = false;
    std::optional<std::vector<int>> report_bob_;
    std::optional<std::vector<int>> report_charlie_;
};

/// Behaviour shared by the two receivers up to the unlocking stage.
class Receiver : public Party {
   public:
    Receiver(World& w, PartyId self, const std::vector<Qubit>& receiver_reg, EncodedSymbols want)
        : w_(w), self_(self), receiver_(receiver_reg), want_(want) {}

    PartyId id() const override { return self_; }

    /// Post-run decoding for parties that did not get to decode in-protocol.
    void finish(PartyContext& ctx) {
        if (!decoded_) {
            decode(ctx);
        }
    }

   protected:
    /// Returns true once the core stream is known and unlocking may begin.
    /// Sets `progress` when something was consumed.
    bool receive_stream(PartyContext& ctx, bool& progress) {
        while (phase_ != Phase::kReady) {
            auto env = ctx.receive_from(kAlice);
            if (!env) {
                return false;
            }
            progress = true;
            const std::string type = type_of(*env);
            if (type == "controls") {
                controls_ = insert_spec_from_json(env->payload.at("spec"));
            } else if (type == "stream") {
                stream_ = env->qubits;
                if (w_.cfg.detect_phase) {
                    ctx.send_classical(kAlice, {{"type", "ack"}});
                    phase_ = Phase::kAwaitReveal;
                } else {
                    core_ = stream_;
                    phase_ = Phase::kReady;
                }
            } else if (type == "reveal") {
                report_detect(ctx, *env);
                phase_ = Phase::kAwaitVerdict;
            } else if (type == "verdict") {
                phase_ = Phase::kReady;
            }
        }
        return true;
    }

    void report_detect(PartyContext& ctx, const Envelope& env) {
        const auto positions = env.payload.at("positions").get<std::vector<std::uint32_t>>();
        const auto& bases = env.payload.at("bases");
        nlohmann::json bits = nlohmann::json::array();
        InsertSpec detect;
        for (std::size_t k = 0; k < positions.size(); k++) {
            const std::uint32_t pos = positions[k] - 1;
            detect.positions.push_back(pos);
            detect.states.push_back(PureQubit::kZero);
            bits.push_back(ctx.measure(stream_.at(pos), parse_basis(bases[k])).bit);
        }
        ctx.send_classical(kAlice, {{"type", "report"}, {"bits", bits}});
        core_ = without_positions(stream_, detect);
    }

    /// Message qubits: core positions that are not this party's controls.
    /// Before the stream is known every slot is kNoQubit.
    std::vector<Qubit> message_qubits() const {
        if (core_.empty()) {
            return std::vector<Qubit>(w_.cfg.n, kNoQubit);
        }
        return without_positions(core_, controls_);
    }

    std::size_t check_control(PartyContext& ctx, std::uint32_t j, Qubit q, bool& ok) {
        ok = true;
        auto k = controls_.find(j);
        if (!k) {
            return 0;
        }
        checks_++;
        const PureQubit expected = controls_.states[*k];
        ok = ctx.measure(q, basis_of(expected)).bit == bit_of(expected);
        return checks_;
    }

    void decode(PartyContext& ctx) {
        DecodeResult d = decode_held(ctx, message_qubits(), receiver_, w_.basis, want_, w_.cfg.n, w_.honest_run());
        decoded_ = true;
        record(d);
    }

    virtual void record(const DecodeResult& d) = 0;

    enum class Phase { kAwaitStream, kAwaitReveal, kAwaitVerdict, kReady };

    World& w_;
    PartyId self_;
    std::vector<Qubit> receiver_;
    EncodedSymbols want_;
    Phase phase_ = Phase::kAwaitStream;
    InsertSpec controls_;
    std::vector<Qubit> stream_;
    std::vector<Qubit> core_;
    std::size_t checks_ = 0;
    bool decoded_ = false;
};

class Bob : public Receiver {
   public:
    explicit Bob(World& w) : Receiver(w, kBob, w.B, w.cfg.b) {}

    StepStatus step(PartyContext& ctx) override {
        bool progress = false;
        if (!receive_stream(ctx, progress)) {
            return progress ? StepStatus::kProgress : StepStatus::kBlocked;
        }
        if (!w_.cfg.stepwise) {
            return joint_unlock(ctx, progress);
        }
        while (true) {
            if (!awaiting_) {
                if (j_ == core_.size()) {
                    decode(ctx);
                    return StepStatus::kHalted;
                }
                ctx.send_qubits(kCharlie, {core_[j_]}, {{"type", "unlock"}, {"step", j_ + 1}});
                awaiting_ = true;
                return StepStatus::kProgress;
            }
            auto env = ctx.receive_from(kCharlie);
            if (!env) {
                return progress ? StepStatus::kProgress : StepStatus::kBlocked;
            }
            progress = true;
            core_[j_] = env->qubits.at(0);
            bool ok = true;
            const std::size_t m = check_control(ctx, j_, core_[j_], ok);
            if (!ok) {
                w_.out.detected_at_step = j_ + 1;
                w_.out.detected_at_check = m;
                w_.out.detected_by = kBob.name();
                ctx.abort({{"reason", "control qubit mismatch"}, {"step", j_ + 1}, {"check", m}});
                return StepStatus::kAborted;
            }
            j_++;
            awaiting_ = false;
        }
    }

   private:
    StepStatus joint_unlock(PartyContext& ctx, bool progress) {
        auto env = ctx.receive_from(kCharlie);
        if (!env) {
            return progress ? StepStatus::kProgress : StepStatus::kBlocked;
        }
        const std::vector<Qubit> mine = message_qubits();
        const std::vector<Qubit>& theirs = env->qubits;
        if (w_.cfg.bob == BobStrategy::kSwapDetain) {
            return swap_detain(ctx, theirs);
        }
        std::vector<Qubit> both = mine;
        both.insert(both.end(), theirs.begin(), theirs.end());
        channels::unlock(ctx.operate("unlock", both), w_.cfg.locking, mine, theirs);
        ctx.send_qubits(kCharlie, theirs, {{"type", "joint_return"}});
        decode(ctx);
        return StepStatus::kHalted;
    }

    /// SWAP unlocking would hand Bob's held quNit to Charlie. Bob keeps
    /// the one he received instead and returns a random basis-state fake.
    StepStatus swap_detain(PartyContext& ctx, const std::vector<Qubit>& theirs) {
        const auto k = static_cast<std::uint32_t>(ctx.rng().below(w_.N));
        std::vector<Qubit> fake;
        for (std::size_t i = 0; i < w_.cfg.n; i++) {
            const bool one = (k >> (w_.cfg.n - 1 - i)) & 1U;
            fake.push_back(ctx.allocate(one ? PureQubit::kOne : PureQubit::kZero));
        }
        ctx.decide({{"swap_detain", true}, {"fake", k}});
        core_ = theirs;
        ctx.send_qubits(kCharlie, fake, {{"type", "joint_return"}});
        decode(ctx);
        return StepStatus::kHalted;
    }

    void record(const DecodeResult& d) override {
        w_.out.bob_decoded = d.symbols;
        w_.out.bob_correct_bits = d.correct_bits;
        w_.out.bob_missing_qubits = d.missing_qubits;
    }

    std::size_t j_ = 0;
    bool awaiting_ = false;
};

class Charlie : public Receiver {
   public:
    explicit Charlie(World& w) : Receiver(w, kCharlie, w.C, w.cfg.c) {}

    StepStatus step(PartyContext& ctx) override {
        bool progress = false;
        if (!receive_stream(ctx, progress)) {
            return progress ? StepStatus::kProgress : StepStatus::kBlocked;
        }
        if (!w_.cfg.stepwise) {
            return joint_unlock(ctx, progress);
        }
        while (auto env = ctx.receive_from(kBob)) {
            progress = true;
            const std::uint32_t j = env->payload.at("step").get<std::uint32_t>() - 1;
            const Qubit q = env->qubits.at(0);
            const Qubit mine = core_.at(j);
            const Qubit pair[2] = {q, mine};
            ctx.operate("unlock_pair", pair).apply_pair_step(q, mine, channels::unlock_step(w_.cfg.locking));

            const CharlieAdversary& adv = w_.cfg.charlie;
            const std::size_t step = j + 1;
            if (adv.strategy == CharlieStrategy::kAbortAt && step == adv.step) {
                ctx.abort({{"reason", "withholding"}, {"step", step}});
                return StepStatus::kAborted;
            }
            bool ok = true;
            const std::size_t m = check_control(ctx, j, mine, ok);
            if (!ok) {
                w_.out.detected_at_step = step;
                w_.out.detected_at_check = m;
                w_.out.detected_by = kCharlie.name();
                ctx.abort({{"reason", "control qubit mismatch"}, {"step", step}, {"check", m}});
                return StepStatus::kAborted;
            }
            Qubit back = q;
            if (adv.strategy == CharlieStrategy::kRandomState && step >= adv.step) {
                back = ctx.allocate(static_cast<PureQubit>(ctx.rng().below(4)));
            }
            ctx.send_qubits(kBob, {back}, {{"type", "return"}, {"step", step}});
            if (step == core_.size()) {
                decode(ctx);
                return StepStatus::kHalted;
            }
        }
        return progress ? StepStatus::kProgress : StepStatus::kBlocked;
    }

   private:
    StepStatus joint_unlock(PartyContext& ctx, bool progress) {
        if (!sent_) {
            ctx.send_qubits(kBob, message_qubits(), {{"type", "joint"}});
            sent_ = true;
            return StepStatus::kProgress;
        }
        auto env = ctx.receive_from(kBob);
        if (!env) {
            return progress ? StepStatus::kProgress : StepStatus::kBlocked;
        }
        // Without controls the core is exactly the message quNit.
        core_ = env->qubits;
        decode(ctx);
        return StepStatus::kHalted;
    }

    void record(const DecodeResult& d) override {
        w_.out.charlie_decoded = d.symbols;
        w_.out.charlie_correct_bits = d.correct_bits;
        w_.out.charlie_missing_qubits = d.missing_qubits;
    }

    bool sent_ = false;
};

/// Bob on the Alice -> Charlie channel: unlock his stream against the
/// intercepted one position by position, read A1 B, relock, pass it on.
class NaiveInterceptResend : public netsim::AdversaryPolicy {
   public:
    explicit NaiveInterceptResend(World& w) : w_(w) {}
    PartyId owner() const override { return kBob; }
    netsim::Capabilities capabilities() const override { return {true, false, false}; }

    void on_intercept(netsim::InterceptContext& ctx) override {
        // The stream is the only quantum envelope on the tapped channel.
        if (ctx.envelope().kind != netsim::EnvelopeKind::kQubits) {
            return;
        }
        const std::vector<Qubit> theirs = ctx.capture();
        const std::vector<Qubit>& mine = w_.stream1;
        PartyContext& bob = ctx.adversary();
        const StreamConfig& cfg = w_.cfg;
        const std::size_t n = cfg.n;
        const std::size_t len = std::min(mine.size(), theirs.size());

        std::vector<Qubit> my_head(mine.begin(), mine.begin() + static_cast<std::ptrdiff_t>(n));
        std::vector<Qubit> their_head(theirs.begin(), theirs.begin() + static_cast<std::ptrdiff_t>(n));
        auto apply = [&](bool relock) {
            if (cfg.locking == Locking::kQft2) {
                std::vector<Qubit> both = my_head;
                both.insert(both.end(), their_head.begin(), their_head.end());
                FactoredState& st = bob.operate(relock ? "intercept_relock" : "intercept_unlock", both);
                relock ? channels::lock(st, cfg.locking, my_head, their_head)
                       : channels::unlock(st, cfg.locking, my_head, their_head);
                return;
            }
            const PairOp op = relock ? channels::lock_step(cfg.locking) : channels::unlock_step(cfg.locking);
            for (std::size_t j = 0; j < len; j++) {
                const Qubit pair[2] = {mine[j], theirs[j]};
                bob.operate(relock ? "intercept_relock_pair" : "intercept_unlock_pair", pair)
                    .apply_pair_step(pair[0], pair[1], op);
            }
        };
        apply(false);
        std::vector<Qubit> read = my_head;
        read.insert(read.end(), w_.B.begin(), w_.B.end());
        ProjectiveOutcome outcome = bob.measure(read, w_.basis);
        if (outcome.label) {
            w_.out.attacker_learned = *outcome.label;
        }
        apply(true);
        ctx.forward(theirs);
    }

   private:
    World& w_;
};

}  // namespace

StreamOutcome run_stream_protocol(const StreamConfig& cfg) {
    if (cfg.n == 0) {
        throw ConfigError("n must be at least 1");
    }
    if (cfg.stepwise && !channels::pairwise_decomposable(cfg.locking)) {
        throw ConfigError("step-wise unlocking needs a pairwise-decomposable lock (dcnot or swap), not qft");
    }
    if (!cfg.stepwise && cfg.s > 0) {
        throw ConfigError("control qubits are only used with step-wise unlocking");
    }
    if (!cfg.detect_phase && cfg.r > 0) {
        throw ConfigError("detect qubits need the detect phase");
    }
    if (!cfg.charlie.honest() && !cfg.stepwise) {
        throw ConfigError("Charlie's deviations apply to step-wise unlocking only");
    }
    if (!cfg.charlie.honest() && (cfg.charlie.step == 0 || cfg.charlie.step > cfg.n + cfg.s)) {
        throw ConfigError("adversary step must lie in 1.." + std::to_string(cfg.n + cfg.s));
    }
    if (cfg.bob == BobStrategy::kInterceptResend && !cfg.detect_phase) {
        throw ConfigError("intercept-resend is modelled against the detect-qubit protocols");
    }
    if (cfg.bob == BobStrategy::kSwapDetain && (cfg.locking != Locking::kSwap || cfg.stepwise)) {
        throw ConfigError("the swap-detain attack needs swap locking with joint unlocking");
    }
    const std::size_t n = cfg.n;
    if (n > 16) {
        throw ConfigError("n must be at most 16");
    }
    const auto N = static_cast<std::uint32_t>(std::uint32_t{1} << n);
    check_symbols(cfg.b, N);
    check_symbols(cfg.c, N);
    const std::size_t wr = channels::receiver_width(cfg.family, n);

    RegisterLayout layout;
    std::vector<Qubit> A1, A2, B, C;
    Qubit next = 0;
    for (std::size_t i = 0; i < n; i++) A1.push_back(next++);
    for (std::size_t i = 0; i < n; i++) A2.push_back(next++);
    for (std::size_t i = 0; i < wr; i++) B.push_back(next++);
    for (std::size_t i = 0; i < wr; i++) C.push_back(next++);
    layout.add("A1", A1);
    layout.add("A2", A2);
    layout.add("B", B);
    layout.add("C", C);
    FactoredState st = FactoredState::init(layout);
    channels::prepare_channel(st, cfg.family, A1, B);
    channels::prepare_channel(st, cfg.family, A2, C);

    Network net(std::move(st), cfg.seed);
    StreamOutcome out;
    net.log().set_config({{"protocol", cfg.protocol},
                          {"family", channels::to_string(cfg.family)},
                          {"locking", channels::to_string(cfg.locking)},
                          {"n", n},
                          {"s", cfg.s},
                          {"r", cfg.r},
                          {"b", to_json(cfg.b)},
                          {"c", to_json(cfg.c)},
                          {"charlie", to_string(cfg.charlie.strategy)},
                          {"charlie_step", cfg.charlie.step},
                          {"bob", to_string(cfg.bob)},
                          {"seed", cfg.seed}});

    World w{cfg, N, A1, A2, B, C, {}, {}, {}, {}, {}, {}, {}, {}, channels::decoding_basis(cfg.family, N), out};
    RandomSource& rng = net.rng();
    const auto core_len = static_cast<std::uint32_t>(n + cfg.s);
    const auto full_len = static_cast<std::uint32_t>(n + cfg.s + cfg.r);
    if (cfg.stepwise) {
        w.ctrl1 = random_insert(rng, core_len, static_cast<std::uint32_t>(cfg.s));
        w.ctrl2 = random_insert(rng, core_len, static_cast<std::uint32_t>(cfg.s));
    }
    if (cfg.detect_phase) {
        w.det1 = random_insert(rng, full_len, static_cast<std::uint32_t>(cfg.r));
        w.det2 = random_insert(rng, full_len, static_cast<std::uint32_t>(cfg.r));
    }
    auto allocate_all = [&](const InsertSpec& spec) {
        std::vector<Qubit> qs;
        for (PureQubit s : spec.states) {
            qs.push_back(net.state().allocate(s));
        }
        net.assign(qs, kAlice);
        return qs;
    };
    const auto c1 = allocate_all(w.ctrl1);
    const auto c2 = allocate_all(w.ctrl2);
    const auto d1 = allocate_all(w.det1);
    const auto d2 = allocate_all(w.det2);
    w.core1 = interleave(A1, w.ctrl1, c1);
    w.core2 = interleave(A2, w.ctrl2, c2);
    w.stream1 = interleave(w.core1, w.det1, d1);
    w.stream2 = interleave(w.core2, w.det2, d2);
    net.assign(A1, kAlice);
    net.assign(A2, kAlice);
    net.assign(B, kBob);
    net.assign(C, kCharlie);
    out.controls_bob = w.ctrl1;
    out.controls_charlie = w.ctrl2;
    out.detect_bob = w.det1;
    out.detect_charlie = w.det2;

    if (cfg.bob == BobStrategy::kInterceptResend) {
        net.add_adversary(std::make_shared<NaiveInterceptResend>(w), kAlice, kCharlie);
    }

    Alice alice(w);
    Bob bob(w);
    Charlie charlie(w);
    Party* parties[3] = {&alice, &bob, &charlie};
    netsim::RunResult run = net.run_schedule(parties);
    out.completed = !run.aborted;
    if (run.aborted_by) {
        out.aborted_by = run.aborted_by->name();
    }
    if (!out.alice_detected) {
        PartyContext bob_ctx(net, kBob);
        bob.finish(bob_ctx);
        PartyContext charlie_ctx(net, kCharlie);
        charlie.finish(charlie_ctx);
    }
    if (out.completed && w.honest_run() &&
        (out.bob_correct_bits != 2 * n || out.charlie_correct_bits != 2 * n)) {
        throw InternalError("honest run decoded the wrong symbols");
    }
    net.check_custody();
    out.log = std::move(net.log());
    return out;
}

}  // namespace qsdc::protocols::detail
