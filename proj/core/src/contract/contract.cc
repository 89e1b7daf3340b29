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

#include "qsdc/contract/contract.h"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

#include "qsdc/protocols/fair.h"
#include "qsdc/qcore/errors.h"

namespace qsdc::contract {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mask_of(std::size_t bits) { return bits >= 64 ? ~0ULL : (std::uint64_t{1} << bits) - 1; }

std::size_t slot(std::size_t i, int b) { return 2 * (i - 1) + static_cast<std::size_t>(b); }

EncodedSymbols to_symbols(std::uint32_t message, std::size_t n) {
    const auto low = static_cast<std::uint32_t>(mask_of(n));
    return {(message >> n) & low, message & low};
}

std::uint32_t from_symbols(EncodedSymbols s, std::size_t n) { return (s.x << n) | s.y; }

void check_digest(const Digest& contract, std::size_t k) {
    if (contract.size() != k) {
        throw FormatError("contract has " + std::to_string(contract.size()) + " bits, expected " + std::to_string(k));
    }
    for (int b : contract) {
        if (b != 0 && b != 1) {
            throw FormatError("contract bits must be 0 or 1");
        }
    }
}

/// Smallest number of correct bits that meets alpha.
std::size_t needed_bits(double alpha, std::size_t total) {
    for (std::size_t m = 0; m <= total; m++) {
        if (protocols::meets_alpha(m, total, alpha)) {
            return m;
        }
    }
    return total + 1;
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::kSignature ? "signature" : "symmetric"; }

Mode parse_mode(std::string_view s) {
    if (s == "signature") return Mode::kSignature;
    if (s == "symmetric") return Mode::kSymmetric;
    throw ConfigError("unknown contract mode '" + std::string(s) + "'");
}

SignatureOracle::SignatureOracle(std::uint64_t key, std::size_t bits) : key_(key), bits_(bits) {
    if (bits == 0 || bits > 32) {
        throw ConfigError("tags must be 1..32 bits wide");
    }
}

std::uint32_t SignatureOracle::sign(int b, std::size_t i, PartyId party) const {
    std::uint64_t h = mix64(key_ ^ static_cast<std::uint64_t>(b));
    h = mix64(h ^ static_cast<std::uint64_t>(i));
    h = mix64(h ^ (static_cast<std::uint64_t>(party.role) << 32 | party.index));
    return static_cast<std::uint32_t>(h & mask_of(bits_));
}

bool SignatureOracle::verify(int b, std::size_t i, PartyId party, std::uint32_t tag) const {
    return sign(b, i, party) == tag;
}

const SdcInstance& ContractSetup::instance(std::size_t i, int b) const {
    if (i == 0 || i > k || (b != 0 && b != 1)) {
        throw FormatError("no SDC instance for (" + std::to_string(b) + ", " + std::to_string(i) + ")");
    }
    return instances[slot(i, b)];
}

std::uint32_t ContractSetup::expected(PartyId claimant, std::size_t i, int b) const {
    const SdcInstance& inst = instance(i, b);
    if (mode == Mode::kSymmetric) {
        return secrets[slot(i, b)];
    }
    if (claimant == netsim::kBob) return inst.to_bob;
    if (claimant == netsim::kCharlie) return inst.to_charlie;
    throw PolicyError("only BOB or CHARLIE may claim a contract");
}

ContractSetup setup_contract(std::size_t k, std::size_t n, Mode mode, std::uint64_t seed, std::size_t s) {
    if (k == 0) {
        throw ConfigError("k must be at least 1");
    }
    if (n == 0 || n > 16) {
        throw ConfigError("n must lie in 1..16");
    }
    RandomSource rng(seed);
    ContractSetup setup;
    setup.k = k;
    setup.n = n;
    setup.s = s;
    setup.mode = mode;
    setup.seed = seed;
    setup.oracle = SignatureOracle(rng.next_u64(), 2 * n);
    const std::uint64_t space = mask_of(2 * n) + 1;
    for (std::size_t i = 1; i <= k; i++) {
        for (int b = 0; b <= 1; b++) {
            SdcInstance inst{i, b, 0, 0};
            if (mode == Mode::kSignature) {
                inst.to_bob = setup.oracle.sign(b, i, netsim::kCharlie);
                inst.to_charlie = setup.oracle.sign(b, i, netsim::kBob);
            } else {
                const auto r = static_cast<std::uint32_t>(rng.below(space));
                const auto pb = static_cast<std::uint32_t>(rng.below(space));
                const auto pc = static_cast<std::uint32_t>(rng.below(space));
                setup.secrets.push_back(r);
                setup.pad_bob.push_back(pb);
                setup.pad_charlie.push_back(pc);
                inst.to_bob = r ^ pb;
                inst.to_charlie = r ^ pc;
            }
            setup.instances.push_back(inst);
        }
    }
    return setup;
}

nlohmann::json to_json(const ContractSetup& setup) {
    nlohmann::json inst = nlohmann::json::array();
    for (const SdcInstance& x : setup.instances) {
        inst.push_back({{"i", x.i}, {"b", x.b}, {"to_bob", x.to_bob}, {"to_charlie", x.to_charlie}});
    }
    nlohmann::json j = {{"k", setup.k},       {"n", setup.n},       {"s", setup.s},
                        {"mode", to_string(setup.mode)}, {"seed", setup.seed}, {"tags", 4 * setup.k},
                        {"instances", inst}};
    if (setup.mode == Mode::kSymmetric) {
        j["judge_secrets"] = setup.secrets;
    }
    return j;
}

ExchangeResult exchange_phase(const ContractSetup& setup, const Digest& contract, const ContractAdversary& charlie,
                              std::uint64_t seed) {
    check_digest(contract, setup.k);
    ExchangeResult out;
    out.log.set_config({{"protocol", "contract-exchange"},
                        {"k", setup.k},
                        {"n", setup.n},
                        {"s", setup.s},
                        {"mode", to_string(setup.mode)},
                        {"setup_seed", setup.seed},
                        {"contract", contract},
                        {"charlie_sdc", charlie.sdc},
                        {"charlie", protocols::to_string(charlie.deviation.strategy)},
                        {"charlie_step", charlie.deviation.step},
                        {"seed", seed}});
    for (std::size_t i = 1; i <= setup.k; i++) {
        const int b = contract[i - 1];
        const bool deviates = charlie.sdc == i && !charlie.deviation.honest();
        if (deviates && charlie.deviation.strategy == protocols::CharlieStrategy::kAbortAt &&
            charlie.deviation.step == 0) {
            out.log.append(netsim::EventKind::kAbort, "CHARLIE", "-", {{"reason", "abort before SDC"}, {"sdc", i}});
            out.stopped_at = i;
            return out;
        }
        const SdcInstance& inst = setup.instance(i, b);
        protocols::FairConfig fc;
        fc.n = setup.n;
        fc.s = setup.s;
        fc.b = to_symbols(inst.to_bob, setup.n);
        fc.c = to_symbols(inst.to_charlie, setup.n);
        if (deviates) {
            fc.adversary = charlie.deviation;
        }
        fc.seed = seed + (i - 1);
        protocols::FairResult r = protocols::run_sdc_fair(fc);
        out.sdcs_run.push_back(slot(i, b));
        out.log.append(netsim::EventKind::kDecision, "-", "-", {{"sdc", i}, {"b", b}, {"events", r.log.size()}});
        out.log.extend(r.log);

        std::uint32_t bob = from_symbols(r.bob_decoded, setup.n);
        std::uint32_t charl = from_symbols(r.charlie_decoded, setup.n);
        if (setup.mode == Mode::kSymmetric) {
            bob ^= setup.pad_bob[slot(i, b)];
            charl ^= setup.pad_charlie[slot(i, b)];
        }
        out.bob.push_back(bob);
        out.charlie.push_back(charl);
        if (!r.completed) {
            out.stopped_at = i;
            return out;
        }
    }
    out.completed = true;
    return out;
}

std::vector<double> AlphaPolicy::draw(std::size_t k) const {
    if (!randomized) {
        return std::vector<double>(k, alpha);
    }
    if (!(lo > 0.5 && hi < 1.0 && lo < hi)) {
        throw ConfigError("the alpha interval must lie inside (1/2, 1)");
    }
    RandomSource rng(seed);
    std::vector<double> out;
    for (std::size_t i = 0; i < k; i++) {
        out.push_back(lo + (hi - lo) * rng.uniform());
    }
    return out;
}

Verdict enforce(const ContractSetup& setup, PartyId claimant, const Digest& contract, const Fragments& fragments,
                const AlphaPolicy& policy) {
    if (claimant != netsim::kBob && claimant != netsim::kCharlie) {
        throw PolicyError("only BOB or CHARLIE may claim a contract");
    }
    check_digest(contract, setup.k);
    if (fragments.size() > setup.k) {
        throw FormatError("more fragments than contract bits");
    }
    const std::size_t bits = setup.tag_bits();
    for (std::uint32_t f : fragments) {
        if (f > mask_of(bits)) {
            throw FormatError("fragment wider than " + std::to_string(bits) + " bits");
        }
    }
    const std::vector<double> alphas = policy.draw(setup.k);
    Verdict v;
    for (std::size_t i = 1; i <= setup.k; i++) {
        if (i > fragments.size()) {
            v.failing_index = i;
            return v;
        }
        const std::uint32_t want = setup.expected(claimant, i, contract[i - 1]);
        const auto correct = bits - static_cast<std::size_t>(std::popcount(fragments[i - 1] ^ want));
        if (!protocols::meets_alpha(correct, bits, alphas[i - 1])) {
            v.failing_index = i;
            return v;
        }
    }
    v.enforced = true;
    v.contract = contract;
    return v;
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j = {{"enforced", v.enforced}};
    j["contract"] = v.contract ? nlohmann::json(*v.contract) : nlohmann::json(nullptr);
    j["failing_index"] = v.failing_index ? nlohmann::json(*v.failing_index) : nlohmann::json(nullptr);
    return j;
}

void write_fragments(std::ostream& out, const Fragments& fragments, std::size_t bits) {
    static constexpr char kHex[] = "0123456789abcdef";
    const std::size_t digits = (bits + 3) / 4;
    for (std::uint32_t f : fragments) {
        std::string line(digits, '0');
        for (std::size_t d = 0; d < digits; d++) {
            line[digits - 1 - d] = kHex[(f >> (4 * d)) & 0xF];
        }
        out << line << '\n';
    }
}

Fragments read_fragments(std::istream& in, std::size_t bits) {
    const std::size_t digits = (bits + 3) / 4;
    Fragments out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        if (line.size() != digits) {
            throw FormatError("fragment line " + std::to_string(lineno) + ": expected " + std::to_string(digits) +
                              " hex digits");
        }
        std::uint64_t v = 0;
        for (char ch : line) {
            int d = -1;
            if (ch >= '0' && ch <= '9') d = ch - '0';
            if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
            if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
            if (d < 0) {
                throw FormatError("fragment line " + std::to_string(lineno) + ": not hex");
            }
            v = (v << 4) | static_cast<std::uint64_t>(d);
        }
        if (v > mask_of(bits)) {
            throw FormatError("fragment line " + std::to_string(lineno) + ": wider than " + std::to_string(bits) +
                              " bits");
        }
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

CheatReport cheat_probability_experiment(const CheatConfig& cfg) {
    if (cfg.trials < 1000) {
        throw ConfigError("the cheat experiment needs at least 1000 trials");
    }
    if (!(cfg.lo > 0.5 && cfg.hi < 1.0 && cfg.lo < cfg.hi)) {
        throw ConfigError("the alpha interval must lie inside (1/2, 1)");
    }
    const std::size_t bits = 2 * cfg.n;
    const std::size_t steps = cfg.n + cfg.s + 2;  // 0, 1..n+s, no abort

    // Policies: fixed cfg.alpha, randomized, then one fixed alpha per
    // distinct threshold that [lo, hi] allows.
    std::vector<double> fixed_alphas{cfg.alpha};
    for (std::size_t m = needed_bits(cfg.lo, bits); m <= needed_bits(cfg.hi, bits); m++) {
        const double a = std::min(cfg.hi, static_cast<double>(m) / static_cast<double>(bits));
        if (needed_bits(a, bits) == m) {
            fixed_alphas.push_back(a);
        }
    }
    const std::size_t policies = fixed_alphas.size() + 1;
    auto policy_of = [&](std::size_t p, std::uint64_t judge_seed) {
        AlphaPolicy ap;
        ap.lo = cfg.lo;
        ap.hi = cfg.hi;
        if (p == 1) {
            ap.randomized = true;
            ap.seed = judge_seed;
        } else {
            ap.alpha = fixed_alphas[p == 0 ? 0 : p - 1];
        }
        return ap;
    };

    // Per trial: for every (step, policy) two flags, Bob then Charlie.
    auto samples = protocols::run_trials(cfg.trials, [&](std::uint64_t t) {
        RandomSource trial = RandomSource::for_trial(cfg.seed, t);
        const std::uint64_t setup_seed = trial.next_u64();
        const std::uint64_t judge_seed = trial.next_u64();
        Digest contract;
        for (std::size_t i = 0; i < cfg.k; i++) contract.push_back(trial.coin() ? 1 : 0);
        const ContractSetup setup = setup_contract(cfg.k, cfg.n, cfg.mode, setup_seed, cfg.s);

        std::vector<std::uint8_t> flags(steps * policies * 2, 0);
        for (std::size_t j = 0; j < steps; j++) {
            ContractAdversary adv;
            if (j < steps - 1) {
                adv.sdc = cfg.k;
                adv.deviation = {protocols::CharlieStrategy::kAbortAt, j};
            }
            const ExchangeResult ex = exchange_phase(setup, contract, adv, cfg.seed + t);
            for (std::size_t p = 0; p < policies; p++) {
                const AlphaPolicy ap = policy_of(p, judge_seed);
                const std::size_t at = (j * policies + p) * 2;
                flags[at] = enforce(setup, netsim::kBob, contract, ex.bob, ap).enforced ? 1 : 0;
                flags[at + 1] = enforce(setup, netsim::kCharlie, contract, ex.charlie, ap).enforced ? 1 : 0;
            }
        }
        return flags;
    });

    auto tally = [&](std::size_t j, std::size_t p) {
        std::uint64_t bob = 0, charlie = 0, one = 0;
        for (const auto& f : samples) {
            const std::size_t at = (j * policies + p) * 2;
            bob += f[at];
            charlie += f[at + 1];
            one += f[at] != f[at + 1] ? 1 : 0;
        }
        return CheatRow{j, p == 1 ? "randomized" : "fixed", protocols::wilson(bob, cfg.trials),
                        protocols::wilson(charlie, cfg.trials), protocols::wilson(one, cfg.trials)};
    };

    CheatReport report;
    bool have_fixed = false, have_random = false;
    for (std::size_t j = 0; j < steps; j++) {
        report.rows.push_back(tally(j, 0));
        const CheatRow randomized = tally(j, 1);
        report.rows.push_back(randomized);
        if (!have_random || randomized.exactly_one.p_hat > report.worst_randomized.p_hat) {
            report.worst_randomized = randomized.exactly_one;
            report.worst_randomized_step = j;
            have_random = true;
        }
        for (std::size_t p = 2; p < policies; p++) {
            const CheatRow fixed = tally(j, p);
            if (!have_fixed || fixed.exactly_one.p_hat > report.worst_fixed.p_hat) {
                report.worst_fixed = fixed.exactly_one;
                report.worst_fixed_alpha = fixed_alphas[p - 1];
                report.worst_fixed_step = j;
                have_fixed = true;
            }
        }
    }
    return report;
}

}  // namespace qsdc::contract
