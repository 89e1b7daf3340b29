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

#include "replay.h"

#include "qsdc/contract/contract.h"
#include "qsdc/protocols/combined.h"
#include "qsdc/protocols/fair.h"
#include "qsdc/protocols/sdc_basic.h"
#include "qsdc/protocols/secure.h"
#include "qsdc/protocols/teleport.h"
#include "qsdc/qcore/errors.h"

namespace qsdc::cli {

namespace {

using namespace qsdc::protocols;

EncodedSymbols symbols(const nlohmann::json& j) { return {j.at(0).get<std::uint32_t>(), j.at(1).get<std::uint32_t>()}; }

std::string record(const netsim::EventLog& log, std::size_t i) {
    if (i >= log.size()) {
        return "<end of log>";
    }
    const netsim::Event& e = log.events()[i];
    return std::to_string(e.seq) + "," + std::string(netsim::to_string(e.kind)) + "," + e.from + "," + e.to + "," +
           e.detail;
}

netsim::EventLog rerun_stream(const nlohmann::json& c, const std::string& protocol) {
    const std::size_t n = c.at("n").get<std::size_t>();
    const Family family = channels::parse_family(c.at("family").get<std::string>());
    const Locking locking = channels::parse_locking(c.at("locking").get<std::string>());
    const EncodedSymbols b = symbols(c.at("b")), cc = symbols(c.at("c"));
    const std::uint64_t seed = c.at("seed").get<std::uint64_t>();
    const CharlieAdversary charlie{parse_charlie_strategy(c.at("charlie").get<std::string>()),
                                   c.at("charlie_step").get<std::size_t>()};
    const BobStrategy bob = parse_bob_strategy(c.at("bob").get<std::string>());

    if (protocol == "sdc") {
        const SdcConfig sc{family, locking, static_cast<std::uint32_t>(1u << n), seed};
        if (bob == BobStrategy::kSwapDetain) {
            return swap_detain_attack(sc, b, cc).log;
        }
        return run_sdc_basic(sc, b, cc).log;
    }
    if (protocol == "fair") {
        FairConfig f;
        f.n = n;
        f.s = c.at("s").get<std::size_t>();
        f.locking = locking;
        f.family = family;
        f.b = b;
        f.c = cc;
        f.adversary = charlie;
        f.seed = seed;
        return run_sdc_fair(f).log;
    }
    if (protocol == "secure") {
        SecureConfig s;
        s.n = n;
        s.r = c.at("r").get<std::size_t>();
        s.locking = locking;
        s.family = family;
        s.b = b;
        s.c = cc;
        s.adversary = bob;
        s.seed = seed;
        return run_sdc_secure(s).log;
    }
    CombinedConfig m;
    m.n = n;
    m.s = c.at("s").get<std::size_t>();
    m.r = c.at("r").get<std::size_t>();
    m.locking = locking;
    m.family = family;
    m.b = b;
    m.c = cc;
    m.charlie = charlie;
    m.bob = bob;
    m.seed = seed;
    return run_sdc_combined(m).log;
}

netsim::EventLog rerun_teleport(const nlohmann::json& c) {
    TeleportConfig t;
    t.M = c.at("M").get<std::size_t>();
    t.N = c.at("N").get<std::uint32_t>();
    for (const auto& in : c.at("inputs")) {
        Amplitudes v;
        for (const auto& a : in) v.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
        t.inputs.push_back(v);
    }
    if (c.contains("outcomes")) {
        std::vector<EncodedSymbols> forced;
        for (const auto& o : c.at("outcomes")) forced.push_back(symbols(o));
        t.outcomes = forced;
    }
    t.seed = c.at("seed").get<std::uint64_t>();
    return run_teleport(t).log;
}

netsim::EventLog rerun_contract(const nlohmann::json& c) {
    const auto setup = contract::setup_contract(c.at("k").get<std::size_t>(), c.at("n").get<std::size_t>(),
                                                contract::parse_mode(c.at("mode").get<std::string>()),
                                                c.at("setup_seed").get<std::uint64_t>(), c.at("s").get<std::size_t>());
    contract::ContractAdversary adv;
    adv.sdc = c.at("charlie_sdc").get<std::size_t>();
    adv.deviation = {parse_charlie_strategy(c.at("charlie").get<std::string>()), c.at("charlie_step").get<std::size_t>()};
    return contract::exchange_phase(setup, c.at("contract").get<contract::Digest>(), adv,
                                    c.at("seed").get<std::uint64_t>())
        .log;
}

}  // namespace

netsim::EventLog rerun(const nlohmann::json& config) {
    try {
        const std::string protocol = config.at("protocol").get<std::string>();
        if (protocol == "sdc" || protocol == "fair" || protocol == "secure" || protocol == "combined") {
            return rerun_stream(config, protocol);
        }
        if (protocol == "teleport") {
            return rerun_teleport(config);
        }
        if (protocol == "contract-exchange") {
            return rerun_contract(config);
        }
        throw ReplayError("log config names unknown protocol '" + protocol + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ReplayError(std::string("log config is incomplete: ") + e.what());
    }
}

ReplayVerdict replay(const netsim::EventLog& recorded) {
    const netsim::EventLog again = rerun(recorded.config());
    ReplayVerdict v;
    v.events = recorded.size();
    v.first_divergence = netsim::first_divergence(recorded, again);
    v.ok = !v.first_divergence.has_value();
    if (v.first_divergence) {
        v.recorded = record(recorded, *v.first_divergence);
        v.replayed = record(again, *v.first_divergence);
    }
    return v;
}

nlohmann::json to_json(const ReplayVerdict& v) {
    nlohmann::json j = {{"status", v.ok ? "OK" : "DIVERGED"}, {"events", v.events}};
    if (v.first_divergence) {
        j["first_divergence"] = *v.first_divergence;
        j["recorded"] = v.recorded;
        j["replayed"] = v.replayed;
    }
    return j;
}

}  // namespace qsdc::cli
