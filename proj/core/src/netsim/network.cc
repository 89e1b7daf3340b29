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

#include "qsdc/netsim/network.h"

#include <algorithm>

#include "qsdc/qcore/errors.h"

namespace qsdc::netsim {

std::string PartyId::name() const {
    switch (role) {
        case Role::kAlice:
            return "ALICE";
        case Role::kBob:
            return "BOB";
        case Role::kCharlie:
            return "CHARLIE";
        case Role::kBobT:
            return "BOB_" + std::to_string(index);
        case Role::kJudge:
            return "JUDGE";
    }
    return "?";
}

nlohmann::json qubits_json(std::span<const Qubit> qubits) {
    return nlohmann::json(std::vector<Qubit>(qubits.begin(), qubits.end()));
}

// PartyContext

RandomSource& PartyContext::rng() { return net_.rng_; }

void PartyContext::send_qubits(PartyId to, std::vector<Qubit> qubits, nlohmann::json payload) {
    net_.send(Envelope{self_, to, EnvelopeKind::kQubits, std::move(qubits), std::move(payload), 0});
}

void PartyContext::send_classical(PartyId to, nlohmann::json payload) {
    net_.send(Envelope{self_, to, EnvelopeKind::kClassical, {}, std::move(payload), 0});
}

std::optional<Envelope> PartyContext::receive() { return net_.take(self_, std::nullopt); }

std::optional<Envelope> PartyContext::receive_from(PartyId from) { return net_.take(self_, from); }

bool PartyContext::owns(std::span<const Qubit> qubits) const { return net_.owns(self_, qubits); }

void PartyContext::check(std::span<const Qubit> qubits) const {
    for (Qubit q : qubits) {
        if (net_.owner(q) != self_ || net_.in_transit(q)) {
            throw CustodyError(self_.name() + " does not hold qubit " + std::to_string(q));
        }
    }
}

FactoredState& PartyContext::operate(std::string_view op, std::span<const Qubit> qubits) {
    check(qubits);
    net_.log_.append(EventKind::kOperation, self_.name(), "-", {{"op", op}, {"qubits", qubits_json(qubits)}});
    return net_.state_;
}

Qubit PartyContext::allocate(PureQubit s) {
    Qubit q = net_.state_.allocate(s);
    net_.custody_[q] = self_;
    net_.log_.append(EventKind::kOperation, self_.name(), "-",
                     {{"op", "allocate"}, {"qubit", q}, {"state", to_string(s)}});
    return q;
}

SingleOutcome PartyContext::measure(Qubit q, MeasureBasis basis) {
    const Qubit one[1] = {q};
    check(one);
    SingleOutcome out = measure_single(net_.state_, q, basis, net_.rng_);
    net_.log_.append(EventKind::kMeasure, self_.name(), "-",
                     {{"qubit", q}, {"basis", to_string(basis)}, {"bit", out.bit}});
    return out;
}

ProjectiveOutcome PartyContext::measure(std::span<const Qubit> qubits, const DecodingBasis& basis) {
    check(qubits);
    ProjectiveOutcome out = measure_projective(net_.state_, qubits, basis, net_.rng_);
    nlohmann::json label = out.label ? nlohmann::json::array({out.label->x, out.label->y}) : nlohmann::json("COMPLEMENT");
    net_.log_.append(EventKind::kMeasure, self_.name(), "-", {{"qubits", qubits_json(qubits)}, {"label", label}});
    return out;
}

double PartyContext::postselect(std::span<const Qubit> qubits, const DecodingBasis& basis, EncodedSymbols label) {
    check(qubits);
    double p = qsdc::postselect(net_.state_, qubits, basis, label);
    net_.log_.append(EventKind::kMeasure, self_.name(), "-",
                     {{"qubits", qubits_json(qubits)}, {"label", {label.x, label.y}}, {"postselected", true}});
    return p;
}

void PartyContext::decide(const nlohmann::json& detail) {
    net_.log_.append(EventKind::kDecision, self_.name(), "-", detail);
}

void PartyContext::abort(const nlohmann::json& reason) {
    net_.log_.append(EventKind::kAbort, self_.name(), "-", reason);
}

// InterceptContext

const nlohmann::json& InterceptContext::read_classical() const {
    if (!policy_.capabilities().read_classical) {
        throw PolicyError(policy_.owner().name() + " may not read classical traffic");
    }
    if (env_.kind != EnvelopeKind::kClassical) {
        throw PolicyError("envelope " + std::to_string(env_.seq) + " is not classical");
    }
    return env_.payload;
}

const std::vector<Qubit>& InterceptContext::capture() {
    if (!policy_.capabilities().wiretap_quantum) {
        throw PolicyError(policy_.owner().name() + " may not wiretap quantum traffic");
    }
    if (env_.kind != EnvelopeKind::kQubits) {
        throw PolicyError("envelope " + std::to_string(env_.seq) + " carries no qubits");
    }
    if (!captured_) {
        for (Qubit q : env_.qubits) {
            net_.in_transit_.erase(q);
            net_.custody_[q] = policy_.owner();
        }
        captured_ = true;
    }
    return env_.qubits;
}

void InterceptContext::forward(std::vector<Qubit> qubits) {
    if (qubits != env_.qubits && !policy_.capabilities().substitute_quantum) {
        throw PolicyError(policy_.owner().name() + " may not substitute quantum traffic");
    }
    for (Qubit q : qubits) {
        if (net_.owner(q) != policy_.owner() || net_.in_transit(q)) {
            throw CustodyError(policy_.owner().name() + " cannot forward qubit " + std::to_string(q) +
                               " it does not hold");
        }
    }
    forwarded_ = std::move(qubits);
}

// Network

void Network::assign(std::span<const Qubit> qubits, PartyId owner) {
    for (Qubit q : qubits) {
        if (!state_.is_live(q)) {
            throw CustodyError("cannot assign dead qubit " + std::to_string(q));
        }
        custody_[q] = owner;
    }
}

PartyId Network::owner(Qubit q) const {
    auto it = custody_.find(q);
    if (it == custody_.end()) {
        throw CustodyError("qubit " + std::to_string(q) + " has no owner");
    }
    return it->second;
}

bool Network::owns(PartyId p, std::span<const Qubit> qubits) const {
    return std::all_of(qubits.begin(), qubits.end(), [&](Qubit q) {
        auto it = custody_.find(q);
        return it != custody_.end() && it->second == p && !in_transit_.contains(q);
    });
}

void Network::check_custody() const {
    std::size_t live = 0;
    for (const auto& f : state_.factors()) {
        for (Qubit q : f.qubits) {
            live++;
            if (!custody_.contains(q)) {
                throw InternalError("live qubit " + std::to_string(q) + " has no owner");
            }
        }
    }
    if (live != custody_.size()) {
        throw InternalError("custody map covers qubits that are not live");
    }
}

void Network::send(Envelope env) {
    if (env.kind == EnvelopeKind::kQubits) {
        if (env.qubits.empty()) {
            throw CustodyError("quantum envelope with no qubits");
        }
        for (Qubit q : env.qubits) {
            auto it = custody_.find(q);
            if (it == custody_.end() || it->second != env.from || in_transit_.contains(q)) {
                throw CustodyError(env.from.name() + " cannot send qubit " + std::to_string(q) +
                                   " it does not hold");
            }
        }
        for (Qubit q : env.qubits) {
            in_transit_.insert(q);
        }
    }
    env.seq = next_seq_++;
    nlohmann::json detail = {{"seq", env.seq},
                             {"kind", env.kind == EnvelopeKind::kQubits ? "QUBITS" : "CLASSICAL"},
                             {"payload", env.payload}};
    if (env.kind == EnvelopeKind::kQubits) {
        detail["qubits"] = qubits_json(env.qubits);
    }
    log_.append(EventKind::kSend, env.from.name(), env.to.name(), detail);
    channels_[{env.from, env.to}].push_back(std::move(env));
}

Envelope Network::deliver_next(PartyId from, PartyId to) {
    auto ch = channels_.find({from, to});
    if (ch == channels_.end() || ch->second.empty()) {
        throw ChannelEmpty("no envelope waiting on " + from.name() + " -> " + to.name());
    }
    Envelope env = std::move(ch->second.front());
    ch->second.pop_front();

    auto tap = taps_.find({from, to});
    if (tap != taps_.end()) {
        const nlohmann::json sent_payload = env.payload;
        InterceptContext ctx(*this, *tap->second, env);
        log_.append(EventKind::kIntercept, tap->second->owner().name(), "-",
                    {{"seq", env.seq}, {"channel", {from.name(), to.name()}}});
        tap->second->on_intercept(ctx);
        if (env.payload != sent_payload) {
            throw InternalError("classical payload changed in flight");
        }
        if (env.kind == EnvelopeKind::kQubits) {
            if (ctx.forwarded() != env.qubits) {
                log_.append(EventKind::kIntercept, tap->second->owner().name(), "-",
                            {{"seq", env.seq}, {"substituted", qubits_json(ctx.forwarded())}});
            }
            env.qubits = ctx.forwarded();
        }
    }

    if (env.kind == EnvelopeKind::kQubits) {
        for (Qubit q : env.qubits) {
            in_transit_.erase(q);
            custody_[q] = to;
        }
    }
    nlohmann::json detail = {{"seq", env.seq}};
    if (env.kind == EnvelopeKind::kQubits) {
        detail["qubits"] = qubits_json(env.qubits);
    }
    log_.append(EventKind::kDeliver, from.name(), to.name(), detail);
    inbox_[to].push_back(env);
    return env;
}

std::size_t Network::pending(PartyId from, PartyId to) const {
    auto ch = channels_.find({from, to});
    return ch == channels_.end() ? 0 : ch->second.size();
}

bool Network::idle() const {
    return std::all_of(channels_.begin(), channels_.end(), [](const auto& kv) { return kv.second.empty(); });
}

void Network::add_adversary(std::shared_ptr<AdversaryPolicy> policy, PartyId from, PartyId to) {
    const PartyId owner = policy->owner();
    if (to == owner || from == owner) {
        throw PolicyError(owner.name() + " cannot tap a channel it is an endpoint of");
    }
    const Capabilities caps = policy->capabilities();
    if (!caps.wiretap_quantum && !caps.read_classical) {
        throw PolicyError(owner.name() + " declares no capability that allows tapping");
    }
    if (caps.substitute_quantum && !caps.wiretap_quantum) {
        throw PolicyError("substituting quantum traffic requires wiretap capability");
    }
    taps_[{from, to}] = std::move(policy);
}

std::optional<Envelope> Network::take(PartyId to, std::optional<PartyId> from) {
    auto box = inbox_.find(to);
    if (box == inbox_.end()) {
        return std::nullopt;
    }
    auto& q = box->second;
    for (auto it = q.begin(); it != q.end(); ++it) {
        if (!from || it->from == *from) {
            Envelope env = std::move(*it);
            q.erase(it);
            return env;
        }
    }
    return std::nullopt;
}

RunResult Network::run_schedule(std::span<Party* const> parties) {
    RunResult result;
    std::vector<bool> halted(parties.size(), false);
    while (true) {
        result.rounds++;
        bool progress = false;
        for (std::size_t i = 0; i < parties.size(); i++) {
            if (halted[i]) {
                continue;
            }
            PartyContext ctx(*this, parties[i]->id());
            const std::size_t before = log_.size();
            StepStatus s = parties[i]->step(ctx);
            if (s == StepStatus::kAborted) {
                if (log_.empty() || log_.events().back().kind != EventKind::kAbort) {
                    ctx.abort(nlohmann::json::object());
                }
                result.aborted = true;
                result.aborted_by = parties[i]->id();
                return result;
            }
            if (s == StepStatus::kHalted) {
                halted[i] = true;
                log_.append(EventKind::kHalt, parties[i]->id().name(), "-", nlohmann::json::object());
                progress = true;
            } else if (s == StepStatus::kProgress || log_.size() != before) {
                progress = true;
            }
        }
        bool delivered = false;
        for (auto& [key, queue] : channels_) {
            while (!queue.empty()) {
                deliver_next(key.first, key.second);
                delivered = true;
            }
        }
        if (std::all_of(halted.begin(), halted.end(), [](bool h) { return h; })) {
            return result;
        }
        if (!progress && !delivered) {
            throw DeadlockError("all parties blocked with no envelope in flight after round " +
                                std::to_string(result.rounds));
        }
    }
}

}  // namespace qsdc::netsim
