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

#include "qsdc/protocols/common.h"

#include <algorithm>
#include <bit>
#include <string>

#include "qsdc/qcore/errors.h"

namespace qsdc::protocols {

std::optional<std::size_t> InsertSpec::find(std::uint32_t pos) const {
    auto it = std::lower_bound(positions.begin(), positions.end(), pos);
    if (it == positions.end() || *it != pos) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - positions.begin());
}

InsertSpec random_insert(RandomSource& rng, std::uint32_t length, std::uint32_t count) {
    InsertSpec spec;
    spec.positions = rng.sample_distinct(length, count);
    for (std::uint32_t k = 0; k < count; k++) {
        spec.states.push_back(static_cast<PureQubit>(rng.below(4)));
    }
    return spec;
}

nlohmann::json to_json(const InsertSpec& spec) {
    nlohmann::json pos = nlohmann::json::array();
    nlohmann::json states = nlohmann::json::array();
    for (std::size_t k = 0; k < spec.size(); k++) {
        pos.push_back(spec.positions[k] + 1);
        states.push_back(to_string(spec.states[k]));
    }
    return {{"positions", pos}, {"states", states}};
}

InsertSpec insert_spec_from_json(const nlohmann::json& j) {
    InsertSpec spec;
    try {
        const auto& pos = j.at("positions");
        const auto& states = j.at("states");
        if (pos.size() != states.size()) {
            throw FormatError("insert spec has mismatched positions and states");
        }
        for (std::size_t k = 0; k < pos.size(); k++) {
            const auto p = pos[k].get<std::uint32_t>();
            if (p == 0) {
                throw FormatError("insert spec positions are 1-based");
            }
            spec.positions.push_back(p - 1);
            const auto name = states[k].get<std::string>();
            bool found = false;
            for (PureQubit q : {PureQubit::kZero, PureQubit::kOne, PureQubit::kPlus, PureQubit::kMinus}) {
                if (to_string(q) == name) {
                    spec.states.push_back(q);
                    found = true;
                }
            }
            if (!found) {
                throw FormatError("unknown single-qubit state '" + name + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed insert spec: ") + e.what());
    }
    return spec;
}

std::string_view to_string(CharlieStrategy s) {
    switch (s) {
        case CharlieStrategy::kHonest:
            return "honest";
        case CharlieStrategy::kRandomState:
            return "random-state";
        case CharlieStrategy::kAbortAt:
            return "abort-at";
    }
    return "?";
}

std::string_view to_string(BobStrategy s) {
    switch (s) {
        case BobStrategy::kHonest:
            return "honest";
        case BobStrategy::kInterceptResend:
            return "intercept-resend";
        case BobStrategy::kSwapDetain:
            return "swap-detain";
    }
    return "?";
}

CharlieStrategy parse_charlie_strategy(std::string_view s) {
    for (CharlieStrategy c : {CharlieStrategy::kHonest, CharlieStrategy::kRandomState, CharlieStrategy::kAbortAt}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw ConfigError("unknown Charlie strategy '" + std::string(s) + "'");
}

BobStrategy parse_bob_strategy(std::string_view s) {
    for (BobStrategy b : {BobStrategy::kHonest, BobStrategy::kInterceptResend, BobStrategy::kSwapDetain}) {
        if (to_string(b) == s) {
            return b;
        }
    }
    throw ConfigError("unknown Bob strategy '" + std::string(s) + "'");
}

std::size_t correct_bits(EncodedSymbols got, EncodedSymbols want, std::size_t n) {
    const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
    return static_cast<std::size_t>(std::popcount(~(got.x ^ want.x) & mask) +
                                    std::popcount(~(got.y ^ want.y) & mask));
}

void check_symbols(EncodedSymbols sym, std::uint32_t N) {
    if (sym.x >= N || sym.y >= N) {
        throw SymbolError("symbols " + to_string(sym) + " out of range for N=" + std::to_string(N));
    }
}

nlohmann::json to_json(EncodedSymbols sym) { return nlohmann::json::array({sym.x, sym.y}); }

}  // namespace qsdc::protocols
