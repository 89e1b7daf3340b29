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

#ifndef QSDC_CONTRACT_CONTRACT_H
#define QSDC_CONTRACT_CONTRACT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsdc/netsim/event_log.h"
#include "qsdc/netsim/network.h"
#include "qsdc/protocols/common.h"
#include "qsdc/protocols/stats.h"

namespace qsdc::contract {

using netsim::EventLog;
using netsim::PartyId;
using protocols::Proportion;

/// k contract bits, each 0 or 1.
using Digest = std::vector<int>;

enum class Mode { kSignature, kSymmetric };

std::string_view to_string(Mode m);
/// "signature" or "symmetric"; ConfigError otherwise.
Mode parse_mode(std::string_view s);

/// Deterministic keyed tag of `bits` bits over (b, i, party). Not a
/// cryptographic signature: anyone holding the key can forge.
class SignatureOracle {
   public:
    SignatureOracle(std::uint64_t key, std::size_t bits);

    std::uint32_t sign(int b, std::size_t i, PartyId party) const;
    bool verify(int b, std::size_t i, PartyId party, std::uint32_t tag) const;
    std::size_t bits() const { return bits_; }

   private:
    std::uint64_t key_;
    std::size_t bits_;
};

/// The SDC prepared for contract bit b at index i (1-based).
struct SdcInstance {
    std::size_t i = 0;
    int b = 0;
    std::uint32_t to_bob = 0;  // 2n-bit message
    std::uint32_t to_charlie = 0;
};

struct ContractSetup {
    std::size_t k = 0;
    std::size_t n = 0;
    std::size_t s = 4;  // control qubits per stream in every SDC
    Mode mode = Mode::kSignature;
    std::uint64_t seed = 0;
    SignatureOracle oracle{0, 2};
    std::vector<SdcInstance> instances;  // index 2(i-1) + b
    // Judge-side secrets and the one-time pads shared with each client
    // (symmetric mode only), indexed like `instances`.
    std::vector<std::uint32_t> secrets;
    std::vector<std::uint32_t> pad_bob;
    std::vector<std::uint32_t> pad_charlie;

    std::size_t tag_bits() const { return 2 * n; }
    const SdcInstance& instance(std::size_t i, int b) const;
    /// What a claimant must present for (b, i): the counterparty's tag or r_i(b).
    std::uint32_t expected(PartyId claimant, std::size_t i, int b) const;
};

/// ConfigError unless k >= 1 and 1 <= n <= 16.
ContractSetup setup_contract(std::size_t k, std::size_t n, Mode mode, std::uint64_t seed, std::size_t s = 4);

nlohmann::json to_json(const ContractSetup& setup);

/// Charlie's behaviour during the exchange. He deviates in SDC `sdc`
/// (1-based; 0 means never). A kAbortAt deviation with step 0 stops
/// before that SDC begins.
struct ContractAdversary {
    std::size_t sdc = 0;
    protocols::CharlieAdversary deviation;
};

/// One fragment per SDC that was run, in index order: the client's
/// decoded 2n-bit message, already decrypted in symmetric mode.
using Fragments = std::vector<std::uint32_t>;

struct ExchangeResult {
    Fragments bob;
    Fragments charlie;
    std::vector<std::size_t> sdcs_run;  // instance indices, 2(i-1) + b_i
    bool completed = false;
    std::optional<std::size_t> stopped_at;  // 1-based SDC index
    EventLog log;
};

/// Runs the fair SDC for (i, b_i), i = 1..k, in order, stopping at the
/// first abort. FormatError unless the contract has k bits of 0/1.
ExchangeResult exchange_phase(const ContractSetup& setup, const Digest& contract, const ContractAdversary& charlie,
                              std::uint64_t seed);

struct AlphaPolicy {
    bool randomized = false;
    double alpha = 0.75;  // fixed mode
    double lo = 0.55;     // randomized mode: alpha_i ~ U(lo, hi)
    double hi = 0.95;
    std::uint64_t seed = 0;

    /// alpha_1..alpha_k; a randomized draw is a pure function of seed.
    std::vector<double> draw(std::size_t k) const;
};

struct Verdict {
    bool enforced = false;
    std::optional<Digest> contract;
    std::optional<std::size_t> failing_index;  // 1-based
};

/// Each fragment must agree with the expected value on at least
/// alpha_i * 2n bits. FormatError for a malformed contract, more than k
/// fragments or a fragment wider than 2n bits; PolicyError unless the
/// claimant is BOB or CHARLIE.
Verdict enforce(const ContractSetup& setup, PartyId claimant, const Digest& contract, const Fragments& fragments,
                const AlphaPolicy& policy);

nlohmann::json to_json(const Verdict& v);

/// Lowercase hex, one line per fragment, ceil(bits / 4) digits each.
void write_fragments(std::ostream& out, const Fragments& fragments, std::size_t bits);
/// FormatError on a line of the wrong width, a non-hex digit or a value
/// of more than `bits` bits.
Fragments read_fragments(std::istream& in, std::size_t bits);

struct CheatConfig {
    std::size_t n = 2;
    std::size_t s = 4;
    std::size_t k = 1;
    Mode mode = Mode::kSignature;
    double alpha = 0.75;  // the fixed policy reported per step
    double lo = 0.55;
    double hi = 0.95;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
};

struct CheatRow {
    std::size_t abort_step = 0;  // 0: before the exchange; n+s+1: no abort
    std::string policy;          // "fixed" or "randomized"
    Proportion bob;
    Proportion charlie;
    Proportion exactly_one;
};

struct CheatReport {
    std::vector<CheatRow> rows;
    /// Worst step and worst fixed alpha in [lo, hi], over the distinct
    /// bit thresholds that interval allows.
    Proportion worst_fixed;
    double worst_fixed_alpha = 0;
    std::size_t worst_fixed_step = 0;
    Proportion worst_randomized;
    std::size_t worst_randomized_step = 0;
};

/// Charlie withholds at each unlocking step of the last SDC in turn.
/// Every trial draws a fresh setup and contract, runs one exchange per
/// abort point with the same seed, and judges both claimants under each
/// policy; a randomized draw is shared by both claimants. ConfigError
/// below 1000 trials.
CheatReport cheat_probability_experiment(const CheatConfig& cfg);

}  // namespace qsdc::contract

#endif  // QSDC_CONTRACT_CONTRACT_H
