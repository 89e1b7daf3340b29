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

#include "commands.h"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsdc/contract/contract.h"
#include "qsdc/protocols/combined.h"
#include "qsdc/protocols/fair.h"
#include "qsdc/protocols/hiding.h"
#include "qsdc/protocols/sdc_basic.h"
#include "qsdc/protocols/secure.h"
#include "qsdc/protocols/teleport.h"
#include "qsdc/qcore/errors.h"
#include "replay.h"
#include "report.h"

namespace qsdc::cli {

namespace {

using namespace qsdc::protocols;
using nlohmann::json;
using cli::to_json;
using contract::to_json;
using protocols::to_json;

constexpr double kHidingTolerance = 1e-9;

struct Options {
    // output
    std::string format = "auto";
    std::string out;
    std::string log;
    // shared parameters
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    std::uint32_t N = 2;
    std::size_t n = 2;
    std::size_t s = 4;
    std::vector<std::size_t> r{4};
    std::size_t M = 2;
    std::size_t k = 4;
    std::string family = "bell";
    std::string locking = "dcnot";
    std::string b;
    std::string c;
    std::string adversary = "honest";  // Charlie (fair, combined, contract) or Bob (sdc, secure)
    std::string bob = "honest";        // Bob in combined
    std::size_t step = 1;
    double alpha = 0.75;
    bool randomized = false;
    double lo = 0.55;
    double hi = 0.95;
    // teleport
    std::string outcomes;
    // contract
    std::string mode = "signature";
    std::string contract_bits;
    std::size_t charlie_sdc = 0;
    bool cheat = false;
    std::string setup_out;
    std::string bob_fragments;
    std::string charlie_fragments;
    // verify-hiding
    bool partial = false;
    // replay
    std::string replay_path;
};

std::vector<std::uint32_t> parse_uints(const std::string& text, char sep) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw ConfigError("'" + item + "' is not a non-negative integer");
        }
    }
    return out;
}

/// "x,y", or a uniform draw from `rng` when empty.
EncodedSymbols symbols_or_random(const std::string& text, std::uint32_t N, RandomSource& rng) {
    if (text.empty()) {
        return {static_cast<std::uint32_t>(rng.below(N)), static_cast<std::uint32_t>(rng.below(N))};
    }
    const auto v = parse_uints(text, ',');
    if (v.size() != 2) {
        throw ConfigError("symbols must be given as x,y");
    }
    const EncodedSymbols s{v[0], v[1]};
    check_symbols(s, N);
    return s;
}

std::uint32_t dimension(std::size_t n) {
    if (n < 1 || n > 8) {
        throw ConfigError("n must lie in 1..8");
    }
    return std::uint32_t{1} << n;
}

void require_trials(std::uint64_t trials, std::uint64_t minimum) {
    if (trials < minimum) {
        throw ConfigError("--trials must be at least " + std::to_string(minimum));
    }
}

json ci_json(const Proportion& p) { return to_json(p); }

std::vector<json> proportion_cells(const Proportion& p) { return {p.successes, p.p_hat, p.lo, p.hi}; }

// ---------------------------------------------------------------- commands

Report cmd_sdc(const Options& o) {
    const Family family = channels::parse_family(o.family);
    const Locking locking = channels::parse_locking(o.locking);
    const BobStrategy bob = parse_bob_strategy(o.adversary);
    channels::qubits_per_qunit(o.N);
    Report rep;
    rep.seed = o.seed;
    if (o.trials > 0) {
        if (bob != BobStrategy::kSwapDetain) {
            throw ConfigError("sdc --trials estimates the swap-detain attack; add --adversary swap-detain");
        }
        rep.config = {{"family", o.family}, {"locking", o.locking}, {"N", o.N}, {"adversary", o.adversary},
                      {"trials", o.trials}, {"seed", o.seed}};
        const SwapDetainStats st = estimate_swap_detain(family, o.N, o.trials, o.seed);
        rep.results = {{"bob_correct", ci_json(st.bob_correct)},
                       {"charlie_correct", ci_json(st.charlie_correct)},
                       {"charlie_expected", 1.0 / (static_cast<double>(o.N) * o.N)}};
        return rep;
    }
    RandomSource sym(o.seed);
    const EncodedSymbols b = symbols_or_random(o.b, o.N, sym);
    const EncodedSymbols c = symbols_or_random(o.c, o.N, sym);
    rep.config = {{"family", o.family}, {"locking", o.locking}, {"N", o.N}, {"b", to_json(b)}, {"c", to_json(c)},
                  {"adversary", o.adversary}, {"seed", o.seed}};
    const SdcConfig cfg{family, locking, o.N, o.seed};
    if (bob == BobStrategy::kSwapDetain) {
        SwapDetainResult r = swap_detain_attack(cfg, b, c);
        rep.results = {{"bob_decoded", to_json(r.bob_decoded)},
                       {"charlie_decoded", to_json(r.charlie_decoded)},
                       {"bob_correct", r.bob_decoded_correct},
                       {"charlie_correct", r.charlie_decoded_correct}};
        rep.log = std::move(r.log);
        return rep;
    }
    if (bob != BobStrategy::kHonest) {
        throw ConfigError("sdc supports --adversary honest or swap-detain");
    }
    SdcResult r = run_sdc_basic(cfg, b, c);
    rep.results = {{"bob_decoded", to_json(r.bob_decoded)}, {"charlie_decoded", to_json(r.charlie_decoded)}};
    rep.ok = r.bob_decoded == b && r.charlie_decoded == c;
    rep.log = std::move(r.log);
    return rep;
}

Report detection_table(const Options& o, const std::string& command) {
    const Locking locking = channels::parse_locking(o.locking);
    const CharlieAdversary adv{parse_charlie_strategy(o.adversary), o.step};
    require_trials(o.trials, 1000);
    dimension(o.n);
    Report rep;
    rep.command = command;
    rep.seed = o.seed;
    rep.config = {{"n", o.n}, {"s", o.s}, {"locking", o.locking}, {"adversary", o.adversary},
                  {"step", o.step}, {"trials", o.trials}, {"seed", o.seed}};
    const auto curve = estimate_detection_curve(o.n, o.s, adv, o.trials, o.seed, locking);
    Table t{{"m", "detected", "p_hat", "ci_lo", "ci_hi"}, {}};
    for (const auto& p : curve) {
        std::vector<json> row{p.m};
        for (json v : proportion_cells(p.detected)) row.push_back(v);
        t.rows.push_back(row);
    }
    rep.table = t;
    return rep;
}

Report cmd_fair(const Options& o) {
    if (o.trials > 0) {
        if (o.adversary == "abort-at") {
            dimension(o.n);
            Report rep;
            rep.seed = o.seed;
            rep.config = {{"n", o.n}, {"s", o.s}, {"adversary", o.adversary}, {"step", o.step},
                          {"alpha", o.alpha}, {"trials", o.trials}, {"seed", o.seed}};
            const AbortAdvantage a = estimate_abort_advantage(o.n, o.s, o.step, o.alpha, o.trials, o.seed);
            rep.results = {{"mean_abs_difference", a.mean_abs_difference},
                           {"mean_bob_correct", a.mean_bob_correct},
                           {"mean_charlie_correct", a.mean_charlie_correct},
                           {"exactly_one_accepts", ci_json(a.exactly_one_accepts)}};
            return rep;
        }
        return detection_table(o, "fair");
    }
    const std::uint32_t N = dimension(o.n);
    RandomSource sym(o.seed);
    FairConfig cfg;
    cfg.n = o.n;
    cfg.s = o.s;
    cfg.locking = channels::parse_locking(o.locking);
    cfg.family = channels::parse_family(o.family);
    cfg.b = symbols_or_random(o.b, N, sym);
    cfg.c = symbols_or_random(o.c, N, sym);
    cfg.adversary = {parse_charlie_strategy(o.adversary), o.step};
    cfg.alpha = o.alpha;
    cfg.seed = o.seed;
    Report rep;
    rep.seed = o.seed;
    rep.config = {{"n", o.n}, {"s", o.s}, {"locking", o.locking}, {"family", o.family}, {"b", to_json(cfg.b)},
                  {"c", to_json(cfg.c)}, {"adversary", o.adversary}, {"step", o.step}, {"alpha", o.alpha},
                  {"seed", o.seed}};
    FairResult r = run_sdc_fair(cfg);
    rep.results = {{"completed", r.completed},
                   {"aborted_by", r.aborted_by ? json(*r.aborted_by) : json(nullptr)},
                   {"detected_by", r.detected_by ? json(*r.detected_by) : json(nullptr)},
                   {"detected_at_check", r.detected_at_check ? json(*r.detected_at_check) : json(nullptr)},
                   {"bob_decoded", to_json(r.bob_decoded)},
                   {"charlie_decoded", to_json(r.charlie_decoded)},
                   {"bob_correct_bits", r.bob_correct_bits},
                   {"charlie_correct_bits", r.charlie_correct_bits},
                   {"bob_accepts", r.bob_accepts},
                   {"charlie_accepts", r.charlie_accepts},
                   {"controls_bob", to_json(r.controls_bob)},
                   {"controls_charlie", to_json(r.controls_charlie)}};
    rep.log = std::move(r.log);
    return rep;
}

Report cmd_secure(const Options& o) {
    const Locking locking = channels::parse_locking(o.locking);
    const Family family = channels::parse_family(o.family);
    const std::uint32_t N = dimension(o.n);
    Report rep;
    rep.seed = o.seed;
    if (o.trials > 0) {
        rep.config = {{"n", o.n}, {"r", o.r}, {"locking", o.locking}, {"family", o.family},
                      {"adversary", "intercept-resend"}, {"trials", o.trials}, {"seed", o.seed}};
        Table t{{"r", "detected", "detected_p_hat", "detected_ci_lo", "detected_ci_hi", "learned",
                 "learned_p_hat", "learned_ci_lo", "learned_ci_hi"},
                {}};
        for (std::size_t r : o.r) {
            const SecureStats st = estimate_secure_detection(o.n, r, locking, family, o.trials, o.seed);
            std::vector<json> row{r};
            for (json v : proportion_cells(st.detected)) row.push_back(v);
            for (json v : proportion_cells(st.learned)) row.push_back(v);
            t.rows.push_back(row);
        }
        rep.table = t;
        return rep;
    }
    if (o.r.size() != 1) {
        throw ConfigError("a single secure run takes one value of -r");
    }
    RandomSource sym(o.seed);
    SecureConfig cfg;
    cfg.n = o.n;
    cfg.r = o.r.front();
    cfg.locking = locking;
    cfg.family = family;
    cfg.b = symbols_or_random(o.b, N, sym);
    cfg.c = symbols_or_random(o.c, N, sym);
    cfg.adversary = parse_bob_strategy(o.adversary);
    cfg.seed = o.seed;
    rep.config = {{"n", o.n}, {"r", cfg.r}, {"locking", o.locking}, {"family", o.family}, {"b", to_json(cfg.b)},
                  {"c", to_json(cfg.c)}, {"adversary", o.adversary}, {"seed", o.seed}};
    SecureResult r = run_sdc_secure(cfg);
    rep.results = {{"alice_detected", r.alice_detected},
                   {"attacker_learned", r.attacker_learned ? to_json(*r.attacker_learned) : json(nullptr)},
                   {"bob_decoded_ok", r.bob_decoded_ok},
                   {"charlie_decoded_ok", r.charlie_decoded_ok},
                   {"bob_decoded", to_json(r.bob_decoded)},
                   {"charlie_decoded", to_json(r.charlie_decoded)},
                   {"detect_bob", to_json(r.detect_bob)},
                   {"detect_charlie", to_json(r.detect_charlie)}};
    rep.log = std::move(r.log);
    return rep;
}

Report cmd_combined(const Options& o) {
    const std::uint32_t N = dimension(o.n);
    if (o.r.size() != 1) {
        throw ConfigError("combined takes one value of -r");
    }
    RandomSource sym(o.seed);
    CombinedConfig cfg;
    cfg.n = o.n;
    cfg.s = o.s;
    cfg.r = o.r.front();
    cfg.locking = channels::parse_locking(o.locking);
    cfg.family = channels::parse_family(o.family);
    cfg.b = symbols_or_random(o.b, N, sym);
    cfg.c = symbols_or_random(o.c, N, sym);
    cfg.charlie = {parse_charlie_strategy(o.adversary), o.step};
    cfg.bob = parse_bob_strategy(o.bob);
    cfg.alpha = o.alpha;
    cfg.seed = o.seed;
    Report rep;
    rep.seed = o.seed;
    rep.config = {{"n", o.n}, {"s", o.s}, {"r", cfg.r}, {"locking", o.locking}, {"family", o.family},
                  {"b", to_json(cfg.b)}, {"c", to_json(cfg.c)}, {"adversary", o.adversary}, {"step", o.step},
                  {"bob", o.bob}, {"alpha", o.alpha}, {"seed", o.seed}};
    CombinedResult r = run_sdc_combined(cfg);
    rep.results = {{"completed", r.completed},
                   {"aborted_by", r.aborted_by ? json(*r.aborted_by) : json(nullptr)},
                   {"alice_detected", r.alice_detected},
                   {"attacker_learned", r.attacker_learned ? to_json(*r.attacker_learned) : json(nullptr)},
                   {"detected_by", r.detected_by ? json(*r.detected_by) : json(nullptr)},
                   {"bob_decoded", to_json(r.bob_decoded)},
                   {"charlie_decoded", to_json(r.charlie_decoded)},
                   {"bob_correct_bits", r.bob_correct_bits},
                   {"charlie_correct_bits", r.charlie_correct_bits},
                   {"bob_accepts", r.bob_accepts},
                   {"charlie_accepts", r.charlie_accepts},
                   {"detection_precedes_unlocking", detection_precedes_unlocking(r.log)}};
    rep.ok = detection_precedes_unlocking(r.log);
    rep.log = std::move(r.log);
    return rep;
}

Report cmd_teleport(const Options& o) {
    channels::qubits_per_qunit(o.N);
    Report rep;
    rep.seed = o.seed;
    std::optional<std::vector<EncodedSymbols>> forced;
    if (!o.outcomes.empty()) {
        forced.emplace();
        std::stringstream ss(o.outcomes);
        std::string item;
        while (std::getline(ss, item, ';')) {
            RandomSource unused(0);
            forced->push_back(symbols_or_random(item, o.N, unused));
        }
    }
    auto make = [&](RandomSource& rng, std::uint64_t seed) {
        TeleportConfig cfg;
        cfg.M = o.M;
        cfg.N = o.N;
        for (std::size_t t = 0; t < o.M; t++) cfg.inputs.push_back(random_qunit(rng, o.N));
        cfg.outcomes = forced;
        cfg.seed = seed;
        return cfg;
    };
    if (o.trials > 0) {
        rep.config = {{"M", o.M}, {"N", o.N}, {"trials", o.trials}, {"seed", o.seed}};
        auto mins = run_trials(o.trials, [&](std::uint64_t t) {
            RandomSource rng = RandomSource::for_trial(o.seed, t);
            const TeleportResult r = run_teleport(make(rng, o.seed + t));
            double worst = 1.0;
            for (double f : r.fidelities) worst = std::min(worst, f);
            return worst;
        });
        double worst = 1.0, sum = 0;
        for (double f : mins) {
            worst = std::min(worst, f);
            sum += f;
        }
        rep.results = {{"min_fidelity", worst}, {"mean_min_fidelity", sum / static_cast<double>(o.trials)}};
        rep.ok = worst >= 1.0 - kHidingTolerance;
        return rep;
    }
    RandomSource rng(o.seed);
    TeleportConfig cfg = make(rng, o.seed);
    rep.config = {{"M", o.M}, {"N", o.N}, {"seed", o.seed}};
    if (forced) {
        json f = json::array();
        for (EncodedSymbols s : *forced) f.push_back(to_json(s));
        rep.config["outcomes"] = f;
    }
    TeleportResult r = run_teleport(cfg);
    json outs = json::array();
    for (EncodedSymbols s : r.outcomes) outs.push_back(to_json(s));
    rep.results = {{"outcomes", outs}, {"fidelities", r.fidelities}};
    for (double f : r.fidelities) rep.ok = rep.ok && f >= 1.0 - kHidingTolerance;
    rep.log = std::move(r.log);
    return rep;
}

Report cmd_contract(const Options& o) {
    const contract::Mode mode = contract::parse_mode(o.mode);
    Report rep;
    rep.seed = o.seed;
    if (o.cheat) {
        contract::CheatConfig cfg;
        cfg.n = o.n;
        cfg.s = o.s;
        cfg.k = o.k;
        cfg.mode = mode;
        cfg.alpha = o.alpha;
        cfg.lo = o.lo;
        cfg.hi = o.hi;
        cfg.trials = o.trials;
        cfg.seed = o.seed;
        rep.config = {{"cheat", true}, {"n", o.n}, {"s", o.s}, {"k", o.k}, {"mode", o.mode}, {"alpha", o.alpha},
                      {"lo", o.lo}, {"hi", o.hi}, {"trials", o.trials}, {"seed", o.seed}};
        const contract::CheatReport cr = contract::cheat_probability_experiment(cfg);
        Table t{{"abort_step", "policy", "bob", "bob_p_hat", "bob_ci_lo", "bob_ci_hi", "charlie", "charlie_p_hat",
                 "charlie_ci_lo", "charlie_ci_hi", "exactly_one", "exactly_one_p_hat", "exactly_one_ci_lo",
                 "exactly_one_ci_hi"},
                {}};
        for (const auto& row : cr.rows) {
            std::vector<json> cells{row.abort_step, row.policy};
            for (const Proportion* p : {&row.bob, &row.charlie, &row.exactly_one}) {
                for (json v : proportion_cells(*p)) cells.push_back(v);
            }
            t.rows.push_back(cells);
        }
        rep.table = t;
        rep.results = {{"worst_fixed", ci_json(cr.worst_fixed)},
                       {"worst_fixed_alpha", cr.worst_fixed_alpha},
                       {"worst_fixed_step", cr.worst_fixed_step},
                       {"worst_randomized", ci_json(cr.worst_randomized)},
                       {"worst_randomized_step", cr.worst_randomized_step}};
        return rep;
    }

    RandomSource rng(o.seed);
    const std::uint64_t setup_seed = rng.next_u64();
    contract::Digest digest;
    if (o.contract_bits.empty()) {
        for (std::size_t i = 0; i < o.k; i++) digest.push_back(rng.coin() ? 1 : 0);
    } else {
        for (char ch : o.contract_bits) {
            if (ch != '0' && ch != '1') throw ConfigError("--contract takes a string of 0 and 1");
            digest.push_back(ch - '0');
        }
    }
    const contract::ContractSetup setup = contract::setup_contract(o.k, o.n, mode, setup_seed, o.s);
    contract::ContractAdversary adv;
    adv.sdc = o.charlie_sdc;
    adv.deviation = {parse_charlie_strategy(o.adversary), o.step};
    contract::AlphaPolicy policy;
    policy.randomized = o.randomized;
    policy.alpha = o.alpha;
    policy.lo = o.lo;
    policy.hi = o.hi;
    policy.seed = rng.next_u64();

    std::string bits;
    for (int d : digest) bits += static_cast<char>('0' + d);
    rep.config = {{"k", o.k}, {"n", o.n}, {"s", o.s}, {"mode", o.mode}, {"contract", bits},
                  {"charlie_sdc", o.charlie_sdc}, {"adversary", o.adversary}, {"step", o.step},
                  {"alpha", o.alpha}, {"randomized", o.randomized}, {"lo", o.lo}, {"hi", o.hi}, {"seed", o.seed}};

    contract::ExchangeResult ex = contract::exchange_phase(setup, digest, adv, o.seed);
    const contract::Verdict vb = contract::enforce(setup, netsim::kBob, digest, ex.bob, policy);
    const contract::Verdict vc = contract::enforce(setup, netsim::kCharlie, digest, ex.charlie, policy);
    rep.results = {{"completed", ex.completed},
                   {"stopped_at", ex.stopped_at ? json(*ex.stopped_at) : json(nullptr)},
                   {"sdcs_run", ex.sdcs_run},
                   {"alphas", policy.draw(o.k)},
                   {"bob", to_json(vb)},
                   {"charlie", to_json(vc)}};
    if (!o.setup_out.empty()) {
        write_atomically(o.setup_out, to_json(setup).dump(2) + "\n", std::cout);
    }
    auto fragments = [&](const std::string& path, const contract::Fragments& f) {
        if (path.empty()) return;
        std::ostringstream ss;
        contract::write_fragments(ss, f, setup.tag_bits());
        write_atomically(path, ss.str(), std::cout);
    };
    fragments(o.bob_fragments, ex.bob);
    fragments(o.charlie_fragments, ex.charlie);
    rep.log = std::move(ex.log);
    return rep;
}

Report cmd_verify_hiding(const Options& o) {
    const Family family = channels::parse_family(o.family);
    const Locking locking = channels::parse_locking(o.locking);
    Report rep;
    rep.seed = o.seed;
    if (o.partial) {
        rep.config = {{"partial", true}, {"n", o.n}, {"s", o.s}, {"locking", o.locking}};
        Table t{{"k", "distance_to_locked", "max_pairwise_distance"}, {}};
        for (std::size_t k = 0; k <= o.n; k++) {
            const PartialUnlockReport pr = partial_unlock_hiding_check(o.n, o.s, locking, k);
            t.rows.push_back({pr.k, pr.distance_to_locked, pr.max_pairwise_distance});
        }
        rep.table = t;
        return rep;
    }
    rep.config = {{"family", o.family}, {"locking", o.locking}, {"N", o.N}};
    const HidingReport h = verify_locking_hiding(family, locking, o.N);
    rep.results = {{"max_trace_distance", h.max_distance},
                   {"worst_b", to_json(h.worst_b)},
                   {"worst_c", to_json(h.worst_c)},
                   {"encodings", h.encodings},
                   {"tolerance", kHidingTolerance},
                   {"hidden", h.max_distance <= kHidingTolerance}};
    rep.ok = h.max_distance <= kHidingTolerance;
    return rep;
}

Report cmd_replay(const Options& o) {
    std::ifstream in(o.replay_path);
    if (!in) {
        throw ConfigError("cannot open " + o.replay_path);
    }
    const netsim::EventLog recorded = netsim::EventLog::read(in);
    Report rep;
    rep.config = {{"log", o.replay_path}, {"recorded_config", recorded.config()}};
    rep.seed = recorded.config().value("seed", std::uint64_t{0});
    const ReplayVerdict v = replay(recorded);
    rep.results = to_json(v);
    rep.ok = v.ok;
    return rep;
}

// ---------------------------------------------------------------- parsing

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "json or csv (default: csv for tables, json otherwise)")
        ->check(CLI::IsMember({"auto", "json", "csv"}));
    sub->add_option("-o,--out", o.out, "report path (default stdout); written atomically");
    sub->add_option("--seed", o.seed, "master seed");
}

void add_log(CLI::App* sub, Options& o) { sub->add_option("--log", o.log, "write the run's event log here"); }

void add_channel(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "bell, w or ghz");
    sub->add_option("--locking", o.locking, "dcnot, qft or swap");
}

void add_symbols(CLI::App* sub, Options& o) {
    sub->add_option("--b", o.b, "Bob's symbols x,y (default: random from the seed)");
    sub->add_option("--c", o.c, "Charlie's symbols x,y (default: random from the seed)");
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Simultaneous dense coding and teleportation simulator"};
    app.name("qsdc");
    app.require_subcommand(1, 1);
    app.failure_message(CLI::FailureMessage::help);

    std::map<CLI::App*, std::function<Report(const Options&)>> handlers;

    auto* sdc = app.add_subcommand("sdc", "basic simultaneous dense coding run (or swap-detain estimate)");
    add_output(sdc, o);
    add_log(sdc, o);
    add_channel(sdc, o);
    add_symbols(sdc, o);
    sdc->add_option("-N", o.N, "quNit dimension (power of two)");
    sdc->add_option("--adversary", o.adversary, "Bob: honest or swap-detain");
    sdc->add_option("--trials", o.trials, "estimate the swap-detain attack over this many trials");
    handlers[sdc] = cmd_sdc;

    auto* fair = app.add_subcommand("fair", "fair protocol with control qubits");
    add_output(fair, o);
    add_log(fair, o);
    add_channel(fair, o);
    add_symbols(fair, o);
    fair->add_option("-n", o.n, "qubits per quNit");
    fair->add_option("-s", o.s, "control qubits per stream");
    fair->add_option("--adversary", o.adversary, "Charlie: honest, random-state or abort-at");
    fair->add_option("--step", o.step, "unlocking step at which Charlie deviates");
    fair->add_option("--alpha", o.alpha, "acceptance fraction in (1/2, 1)");
    fair->add_option("--trials", o.trials, "Monte Carlo trials (detection curve or abort advantage)");
    handlers[fair] = cmd_fair;

    auto* secure = app.add_subcommand("secure", "detect-qubit protocol against intercept-resend");
    add_output(secure, o);
    add_log(secure, o);
    add_channel(secure, o);
    add_symbols(secure, o);
    secure->add_option("-n", o.n, "qubits per quNit");
    secure->add_option("-r", o.r, "detect qubits per stream; several values with --trials")->delimiter(',');
    secure->add_option("--adversary", o.adversary, "Bob: honest or intercept-resend");
    secure->add_option("--trials", o.trials, "Monte Carlo trials per value of r");
    handlers[secure] = cmd_secure;

    auto* combined = app.add_subcommand("combined", "fair and secure protocol together");
    add_output(combined, o);
    add_log(combined, o);
    add_channel(combined, o);
    add_symbols(combined, o);
    combined->add_option("-n", o.n, "qubits per quNit");
    combined->add_option("-s", o.s, "control qubits per stream");
    combined->add_option("-r", o.r, "detect qubits per stream");
    combined->add_option("--adversary", o.adversary, "Charlie: honest, random-state or abort-at");
    combined->add_option("--step", o.step, "unlocking step at which Charlie deviates");
    combined->add_option("--bob", o.bob, "Bob: honest or intercept-resend");
    combined->add_option("--alpha", o.alpha, "acceptance fraction in (1/2, 1)");
    handlers[combined] = cmd_combined;

    auto* teleport = app.add_subcommand("teleport", "controlled teleportation to M receivers");
    add_output(teleport, o);
    add_log(teleport, o);
    teleport->add_option("-M", o.M, "number of receivers");
    teleport->add_option("-N", o.N, "quNit dimension (power of two)");
    teleport->add_option("--outcomes", o.outcomes, "force Bell outcomes, x,y;x,y;...");
    teleport->add_option("--trials", o.trials, "repeat with fresh random inputs");
    handlers[teleport] = cmd_teleport;

    auto* contract_cmd = app.add_subcommand("contract", "contract signing over fair SDCs");
    add_output(contract_cmd, o);
    add_log(contract_cmd, o);
    contract_cmd->add_option("-k", o.k, "contract bits");
    contract_cmd->add_option("-n", o.n, "qubits per quNit in each SDC");
    contract_cmd->add_option("-s", o.s, "control qubits per stream in each SDC");
    contract_cmd->add_option("--mode", o.mode, "signature or symmetric");
    contract_cmd->add_option("--contract", o.contract_bits, "contract bits, e.g. 1011 (default: random)");
    contract_cmd->add_option("--adversary", o.adversary, "Charlie: honest, random-state or abort-at");
    contract_cmd->add_option("--charlie-sdc", o.charlie_sdc, "SDC index where Charlie deviates (0: never)");
    contract_cmd->add_option("--step", o.step, "unlocking step of the deviation (0 with abort-at: before it)");
    contract_cmd->add_option("--alpha", o.alpha, "fixed acceptance fraction");
    contract_cmd->add_flag("--randomized", o.randomized, "draw alpha_i uniformly from (lo, hi)");
    contract_cmd->add_option("--lo", o.lo, "lower end of the alpha interval");
    contract_cmd->add_option("--hi", o.hi, "upper end of the alpha interval");
    contract_cmd->add_flag("--cheat", o.cheat, "run the abort-sweep cheating experiment");
    contract_cmd->add_option("--trials", o.trials, "trials for --cheat");
    contract_cmd->add_option("--setup-out", o.setup_out, "write the setup as JSON");
    contract_cmd->add_option("--bob-fragments", o.bob_fragments, "write Bob's fragments (hex)");
    contract_cmd->add_option("--charlie-fragments", o.charlie_fragments, "write Charlie's fragments (hex)");
    handlers[contract_cmd] = cmd_contract;

    auto* hiding = app.add_subcommand("verify-hiding", "exhaustive hiding check of a locked channel");
    add_output(hiding, o);
    add_channel(hiding, o);
    hiding->add_option("-N", o.N, "quNit dimension, 2 or 4");
    hiding->add_flag("--partial", o.partial, "partial-unlock check over k = 0..n (Bell)");
    hiding->add_option("-n", o.n, "qubits per quNit for --partial");
    hiding->add_option("-s", o.s, "control qubits per stream for --partial");
    handlers[hiding] = cmd_verify_hiding;

    auto* curve = app.add_subcommand("detection-curve", "detection by the first m control checks");
    add_output(curve, o);
    curve->add_option("-n", o.n, "qubits per quNit");
    curve->add_option("-s", o.s, "control qubits per stream");
    curve->add_option("--locking", o.locking, "dcnot or swap");
    curve->add_option("--adversary", o.adversary, "Charlie: random-state or abort-at");
    curve->add_option("--step", o.step, "unlocking step at which Charlie deviates");
    curve->add_option("--trials", o.trials, "Monte Carlo trials (at least 1000)")->required();
    handlers[curve] = [](const Options& opt) { return detection_table(opt, "detection-curve"); };

    auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded event log and compare");
    add_output(replay_cmd, o);
    replay_cmd->add_option("log", o.replay_path, "event log file")->required();
    handlers[replay_cmd] = cmd_replay;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "qsdc: " << e.what() << "\n";
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitConfig;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const bool is_curve = chosen == curve;
    if (chosen == fair && o.trials > 0 && o.adversary == "honest") {
        o.adversary = "random-state";
    }
    if (is_curve && o.adversary == "honest") {
        o.adversary = "random-state";
    }
    try {
        const Format format = parse_format(o.format);
        const auto t0 = std::chrono::steady_clock::now();
        Report rep = handlers.at(chosen)(o);
        rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (rep.command.empty()) {
            rep.command = chosen->get_name();
        }
        const bool csv = format == Format::kCsv || (format == Format::kAuto && rep.table.has_value());
        write_atomically(o.out, csv ? rep.render_csv() : rep.render_json(), out);
        if (!o.log.empty()) {
            if (!rep.log) {
                throw ConfigError("--log needs a single run, not a Monte Carlo estimate");
            }
            std::ostringstream ss;
            rep.log->write(ss);
            write_atomically(o.log, ss.str(), out);
        }
        return rep.ok ? kExitOk : kExitInvariant;
    } catch (const InternalError& e) {
        err << "qsdc: invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const CustodyError& e) {
        err << "qsdc: invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const DeadlockError& e) {
        err << "qsdc: invariant breach: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        // Config, symbol, dimension, format, replay, policy, capacity errors.
        err << "qsdc: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "qsdc: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace qsdc::cli
