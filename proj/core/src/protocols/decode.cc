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

#include "decode.h"

#include "qsdc/qcore/errors.h"

namespace qsdc::protocols::detail {

DecodeResult decode_held(netsim::PartyContext& ctx, const std::vector<Qubit>& message,
                         const std::vector<Qubit>& receiver, const DecodingBasis& basis, EncodedSymbols want,
                         std::size_t n, bool honest) {
    if (message.size() != n) {
        throw InternalError("expected " + std::to_string(n) + " message slots, got " + std::to_string(message.size()));
    }
    DecodeResult out;
    std::vector<Qubit> read;
    std::uint32_t guessed = 0;
    for (std::size_t i = 0; i < n; i++) {
        const Qubit q = message[i];
        if (q != kNoQubit) {
            const Qubit one[1] = {q};
            if (ctx.owns(one)) {
                read.push_back(q);
                continue;
            }
        }
        read.push_back(ctx.allocate(PureQubit::kZero));
        guessed |= std::uint32_t{1} << (n - 1 - i);
        out.missing_qubits++;
    }
    read.insert(read.end(), receiver.begin(), receiver.end());
    ProjectiveOutcome m = ctx.measure(read, basis);
    const std::uint32_t all = (std::uint32_t{1} << n) - 1;
    if (m.is_complement()) {
        if (honest) {
            throw InternalError("COMPLEMENT outcome in an honest decoding");
        }
        out.complement = true;
        guessed = all;
    } else {
        out.symbols = *m.label;
    }
    auto coin_fill = [&](std::uint32_t v) {
        for (std::size_t d = 0; d < n; d++) {
            const std::uint32_t bit = std::uint32_t{1} << d;
            if (guessed & bit) {
                v = ctx.rng().coin() ? (v | bit) : (v & ~bit);
            }
        }
        return v;
    };
    out.symbols.x = coin_fill(out.symbols.x);
    out.symbols.y = coin_fill(out.symbols.y);
    if (guessed != 0) {
        ctx.decide({{"guessed_digits", guessed}, {"decoded", to_json(out.symbols)}});
    }
    out.correct_bits = correct_bits(out.symbols, want, n);
    return out;
}

}  // namespace qsdc::protocols::detail
