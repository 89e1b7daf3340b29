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

#ifndef QSDC_NETSIM_NETWORK_H
#define QSDC_NETSIM_NETWORK_H

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsdc/netsim/event_log.h"
#include "qsdc/qcore/measure.h"
#include "qsdc/qcore/random.h"
#include "qsdc/qcore/state.h"

namespace qsdc::netsim {

enum class Role { kAlice, kBob, kCharlie, kBobT, kJudge };

struct PartyId {
    Role role = Role::kAlice;
    std::uint32_t index = 0;  // only meaningful for BOB_t

    std::string name() const;
    friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

inline constexpr PartyId kAlice{Role::kAlice};
inline constexpr PartyId kBob{Role::kBob};
inline constexpr PartyId kCharlie{Role::kCharlie};
inline constexpr PartyId kJudge{Role::kJudge};
inline PartyId bob_t(std::uint32_t t) { return PartyId{Role::kBobT, t}; }

enum class EnvelopeKind { kQubits, kClassical };

struct Envelope {
    PartyId from;
    PartyId to;
    EnvelopeKind kind = EnvelopeKind::kClassical;
    std::vector<Qubit> qubits;
    nlohmann::json payload = nlohmann::json::object();
    std::uint64_t seq = 0;
};

/// What an adversary policy may do on the channels it taps.
struct Capabilities {
    bool wiretap_quantum = false;     // take custody of qubits in flight
    bool substitute_quantum = false;  // forward different qubits than were sent
    bool read_classical = false;      // read (never modify) classical payloads
};

class Network;
class InterceptContext;

/// Interposition on one or more channels, acting with the custody of `owner`.
class AdversaryPolicy {
   public:
    virtual ~AdversaryPolicy() = default;
    virtual PartyId owner() const = 0;
    virtual Capabilities capabilities() const = 0;
    virtual void on_intercept(InterceptContext& ctx) = 0;
};

/// Custody-checked view of the network for one party.
class PartyContext {
   public:
    PartyContext(Network& net, PartyId self) : net_(net), self_(self) {}

    PartyId self() const { return self_; }
    RandomSource& rng();

    void send_qubits(PartyId to, std::vector<Qubit> qubits, nlohmann::json payload = nlohmann::json::object());
    void send_classical(PartyId to, nlohmann::json payload);

    /// Oldest delivered envelope, optionally only from `from`.
    std::optional<Envelope> receive();
    std::optional<Envelope> receive_from(PartyId from);

    bool owns(std::span<const Qubit> qubits) const;

    /// The global state, after checking that this party holds every qubit
    /// in `qubits` (CustodyError otherwise). Logs an OPERATION record.
    FactoredState& operate(std::string_view op, std::span<const Qubit> qubits);

    Qubit allocate(PureQubit s);
    SingleOutcome measure(Qubit q, MeasureBasis basis);
    ProjectiveOutcome measure(std::span<const Qubit> qubits, const DecodingBasis& basis);
    /// Forced-outcome measurement for analysis runs; logged like a measurement.
    double postselect(std::span<const Qubit> qubits, const DecodingBasis& basis, EncodedSymbols label);

    void decide(const nlohmann::json& detail);
    /// Logs ABORT; the party's step should then return StepStatus::kAborted.
    void abort(const nlohmann::json& reason);

   private:
    void check(std::span<const Qubit> qubits) const;

    Network& net_;
    PartyId self_;
};

/// Handed to an adversary policy while an envelope is in flight.
class InterceptContext {
   public:
    InterceptContext(Network& net, const AdversaryPolicy& policy, const Envelope& env)
        : net_(net), policy_(policy), env_(env), forwarded_(env.qubits), as_owner_(net, policy.owner()) {}

    const Envelope& envelope() const { return env_; }
    PartyContext& adversary() { return as_owner_; }

    /// Classical payload; PolicyError without read_classical.
    const nlohmann::json& read_classical() const;
    /// Takes custody of the qubits in flight; PolicyError without wiretap_quantum.
    const std::vector<Qubit>& capture();
    /// Qubits the recipient will get. Anything other than the originals
    /// needs substitute_quantum. The adversary must hold all of them.
    void forward(std::vector<Qubit> qubits);

    bool captured() const { return captured_; }
    const std::vector<Qubit>& forwarded() const { return forwarded_; }

   private:
    Network& net_;
    const AdversaryPolicy& policy_;
    const Envelope& env_;
    std::vector<Qubit> forwarded_;
    bool captured_ = false;
    PartyContext as_owner_;
};

enum class StepStatus { kProgress, kBlocked, kHalted, kAborted };

/// A resumable party: each call does as much as it can and reports why it
/// stopped.
class Party {
   public:
    virtual ~Party() = default;
    virtual PartyId id() const = 0;
    virtual StepStatus step(PartyContext& ctx) = 0;
};

struct RunResult {
    bool aborted = false;
    std::optional<PartyId> aborted_by;
    std::size_t rounds = 0;
};

/// One simulation universe: the global state, qubit custody, FIFO channels
/// between ordered party pairs, inboxes, adversary hooks and the event log.
class Network {
   public:
    Network(FactoredState state, std::uint64_t seed) : state_(std::move(state)), rng_(seed) {}

    FactoredState& state() { return state_; }
    const FactoredState& state() const { return state_; }
    RandomSource& rng() { return rng_; }
    EventLog& log() { return log_; }
    const EventLog& log() const { return log_; }

    /// Initial custody, before the run starts.
    void assign(std::span<const Qubit> qubits, PartyId owner);
    /// CustodyError for qubits nobody holds.
    PartyId owner(Qubit q) const;
    bool in_transit(Qubit q) const { return in_transit_.contains(q); }
    bool owns(PartyId p, std::span<const Qubit> qubits) const;
    const std::map<Qubit, PartyId>& custody() const { return custody_; }
    /// InternalError unless every live qubit has exactly one owner and no
    /// dead qubit has one.
    void check_custody() const;

    /// Enqueues on the (from, to) channel. CustodyError if a QUBITS sender
    /// does not hold every listed qubit.
    void send(Envelope env);
    /// Passes the head of (from, to) through any tap, transfers custody and
    /// puts the envelope in the recipient's inbox. ChannelEmpty if none.
    Envelope deliver_next(PartyId from, PartyId to);
    std::size_t pending(PartyId from, PartyId to) const;
    bool idle() const;

    /// Taps the (from, to) channel. PolicyError if the channel ends at the
    /// policy owner or the policy declares no capability that applies.
    void add_adversary(std::shared_ptr<AdversaryPolicy> policy, PartyId from, PartyId to);

    std::optional<Envelope> take(PartyId to, std::optional<PartyId> from);

    /// Round-robin over `parties` until all halt or one aborts. Between
    /// rounds every queued envelope is delivered, channels in (from, to)
    /// order. DeadlockError if a round changes nothing.
    RunResult run_schedule(std::span<Party* const> parties);

   private:
    friend class InterceptContext;
    friend class PartyContext;

    FactoredState state_;
    RandomSource rng_;
    EventLog log_;
    std::map<Qubit, PartyId> custody_;
    std::set<Qubit> in_transit_;
    std::map<std::pair<PartyId, PartyId>, std::deque<Envelope>> channels_;
    std::map<PartyId, std::deque<Envelope>> inbox_;
    std::map<std::pair<PartyId, PartyId>, std::shared_ptr<AdversaryPolicy>> taps_;
    std::uint64_t next_seq_ = 0;
};

nlohmann::json qubits_json(std::span<const Qubit> qubits);

}  // namespace qsdc::netsim

#endif  // QSDC_NETSIM_NETWORK_H
