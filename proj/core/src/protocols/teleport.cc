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

#include "qsdc/protocols/teleport.h"

#include <cmath>
#include <map>
#include <numbers>

#include "qsdc/channels/channels.h"
#include "qsdc/netsim/network.h"
#include "qsdc/qcore/density.h"
#include "qsdc/qcore/errors.h"

namespace qsdc::protocols {

using netsim::Network;
using netsim::Party;
using netsim::PartyContext;
using netsim::PartyId;
using netsim::StepStatus;

namespace {

struct World {
    const TeleportConfig& cfg;
    std::vector<std::vector<Qubit>> A, B, T;
    DecodingBasis bell;
    std::vector<EncodedSymbols> outcomes;
};

std::vector<Qubit> flatten(const std::vector<std::vector<Qubit>>& regs) {
    std::vector<Qubit> out;
    for (const auto& r : regs) out.insert(out.end(), r.begin(), r.end());
    return out;
}

class Alice : public Party {
   public:
    explicit Alice(World& w) : w_(w) {}
    PartyId id() const override { return netsim::kAlice; }

    StepStatus step(PartyContext& ctx) override {
        const std::vector<Qubit> all_a = flatten(w_.A);
        ctx.operate("lock_qft", all_a).qft(all_a, false);
        for (std::size_t t = 0; t < w_.cfg.M; t++) {
            std::vector<Qubit> pair = w_.A[t];
            pair.insert(pair.end(), w_.T[t].begin(), w_.T[t].end());
            EncodedSymbols xy;
            if (w_.cfg.outcomes) {
                xy = (*w_.cfg.outcomes)[t];
                ctx.postselect(pair, w_.bell, xy);
            } else {
                ProjectiveOutcome m = ctx.measure(pair, w_.bell);
                if (m.is_complement()) {
                    throw InternalError("complement outcome in a complete Bell basis");
                }
                xy = *m.label;
            }
            w_.outcomes.push_back(xy);
        }
        for (std::size_t t = 0; t < w_.cfg.M; t++) {
            ctx.send_classical(netsim::bob_t(static_cast<std::uint32_t>(t + 1)),
                               {{"type", "outcome"}, {"xy", to_json(w_.outcomes[t])}});
        }
        return StepStatus::kHalted;
    }

   private:
    World& w_;
};

/// BOB_1 gathers every B_t, undoes the lock and hands them back; each
/// BOB_t then applies its own correction.
class Receiver : public Party {
   public:
    Receiver(World& w, std::size_t t) : w_(w), t_(t) {}
    PartyId id() const override { return netsim::bob_t(static_cast<std::uint32_t>(t_ + 1)); }

    StepStatus step(PartyContext& ctx) override {
        bool progress = false;
        while (auto env = ctx.receive()) {
            progress = true;
            const std::string type = env->payload.value("type", "");
            if (type == "outcome") {
                xy_ = EncodedSymbols{env->payload.at("xy").at(0).get<std::uint32_t>(),
                                     env->payload.at("xy").at(1).get<std::uint32_t>()};
            } else if (type == "gather") {
                gathered_[env->from.index - 1] = true;
            } else if (type == "unlocked") {
                unlocked_ = true;
            }
        }
        if (t_ == 0) {
            progress |= coordinate(ctx);
        } else if (!sent_) {
            ctx.send_qubits(netsim::bob_t(1), w_.B[t_], {{"type", "gather"}});
            sent_ = true;
            progress = true;
        }
        if (unlocked_ && xy_) {
            const std::vector<Qubit>& b = w_.B[t_];
            FactoredState& st = ctx.operate("recover", b);
            st.shift(b, (w_.cfg.N - xy_->y) % w_.cfg.N);
            st.rotate(b, xy_->x);
            return StepStatus::kHalted;
        }
        return progress ? StepStatus::kProgress : StepStatus::kBlocked;
    }

   private:
    bool coordinate(PartyContext& ctx) {
        if (unlocked_) {
            return false;
        }
        gathered_[0] = true;
        for (std::size_t t = 0; t < w_.cfg.M; t++) {
            if (!gathered_[t]) {
                return false;
            }
        }
        const std::vector<Qubit> all_b = flatten(w_.B);
        ctx.operate("unlock_qft", all_b).qft(all_b, true);
        for (std::size_t t = 1; t < w_.cfg.M; t++) {
            ctx.send_qubits(netsim::bob_t(static_cast<std::uint32_t>(t + 1)), w_.B[t], {{"type", "unlocked"}});
        }
        unlocked_ = true;
        return true;
    }

    World& w_;
    std::size_t t_;
    std::optional<EncodedSymbols> xy_;
    std::map<std::size_t, bool> gathered_;
    bool sent_ = false;
    bool unlocked_ = false;
};

}  // namespace

Amplitudes random_qunit(RandomSource& rng, std::uint32_t N) {
    Amplitudes v(N);
    double norm = 0;
    for (Complex& a : v) {
        // Box-Muller from two uniforms; the first is shifted away from 0.
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = std::polar(r, 2.0 * std::numbers::pi * u2);
        norm += std::norm(a);
    }
    for (Complex& a : v) a /= std::sqrt(norm);
    return v;
}

TeleportResult run_teleport(const TeleportConfig& cfg) {
    if (cfg.M < 2) {
        throw ConfigError("teleportation needs M >= 2 receivers");
    }
    const std::size_t n = channels::qubits_per_qunit(cfg.N);
    if (3 * cfg.M * n > kMaxFactorQubits) {
        throw CapacityError("M = " + std::to_string(cfg.M) + ", N = " + std::to_string(cfg.N) +
                            " needs a " + std::to_string(3 * cfg.M * n) + "-qubit factor");
    }
    if (cfg.inputs.size() != cfg.M) {
        throw ConfigError("expected one input state per receiver");
    }
    for (const Amplitudes& in : cfg.inputs) {
        double norm = 0;
        for (Complex a : in) norm += std::norm(a);
        if (in.size() != cfg.N || std::abs(norm - 1.0) > kNormTolerance) {
            throw ConfigError("input states must be normalized vectors of length N");
        }
    }
    if (cfg.outcomes) {
        if (cfg.outcomes->size() != cfg.M) {
            throw ConfigError("expected one forced outcome per receiver");
        }
        for (EncodedSymbols s : *cfg.outcomes) check_symbols(s, cfg.N);
    }

    World w{cfg, {}, {}, {}, channels::decoding_basis(Family::kBell, cfg.N), {}};
    RegisterLayout layout;
    Qubit next = 0;
    auto take = [&](const std::string& name) {
        std::vector<Qubit> qs;
        for (std::size_t i = 0; i < n; i++) qs.push_back(next++);
        layout.add(name, qs);
        return qs;
    };
    for (std::size_t t = 1; t <= cfg.M; t++) w.A.push_back(take("A" + std::to_string(t)));
    for (std::size_t t = 1; t <= cfg.M; t++) w.B.push_back(take("B" + std::to_string(t)));
    for (std::size_t t = 1; t <= cfg.M; t++) w.T.push_back(take("T" + std::to_string(t)));
    FactoredState st = FactoredState::init(std::move(layout));
    for (std::size_t t = 0; t < cfg.M; t++) {
        channels::prepare_channel(st, Family::kBell, w.A[t], w.B[t]);
        st.install(w.T[t], cfg.inputs[t]);
    }

    Network net(std::move(st), cfg.seed);
    nlohmann::json inputs = nlohmann::json::array();
    for (const Amplitudes& in : cfg.inputs) {
        nlohmann::json v = nlohmann::json::array();
        for (Complex a : in) v.push_back({a.real(), a.imag()});
        inputs.push_back(v);
    }
    nlohmann::json config = {{"protocol", "teleport"}, {"M", cfg.M}, {"N", cfg.N}, {"inputs", inputs}, {"seed", cfg.seed}};
    if (cfg.outcomes) {
        nlohmann::json forced = nlohmann::json::array();
        for (EncodedSymbols s : *cfg.outcomes) forced.push_back(to_json(s));
        config["outcomes"] = forced;
    }
    net.log().set_config(config);
    net.assign(flatten(w.A), netsim::kAlice);
    net.assign(flatten(w.T), netsim::kAlice);
    for (std::size_t t = 0; t < cfg.M; t++) {
        net.assign(w.B[t], netsim::bob_t(static_cast<std::uint32_t>(t + 1)));
    }

    Alice alice(w);
    std::vector<Receiver> receivers;
    receivers.reserve(cfg.M);
    for (std::size_t t = 0; t < cfg.M; t++) receivers.emplace_back(w, t);
    std::vector<Party*> parties{&alice};
    for (Receiver& r : receivers) parties.push_back(&r);
    net.run_schedule(parties);
    net.check_custody();

    TeleportResult result;
    result.outcomes = w.outcomes;
    for (std::size_t t = 0; t < cfg.M; t++) {
        result.fidelities.push_back(fidelity_pure(net.state(), w.B[t], cfg.inputs[t]));
    }
    result.log = std::move(net.log());
    return result;
}

}  // namespace qsdc::protocols
