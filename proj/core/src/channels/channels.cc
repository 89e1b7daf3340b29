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

#include "qsdc/channels/channels.h"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "qsdc/qcore/errors.h"

namespace qsdc::channels {

namespace {

void check_symbols(std::uint32_t N, std::uint32_t x, std::uint32_t y) {
    qubits_per_qunit(N);
    if (x >= N || y >= N) {
        throw SymbolError("symbols (" + std::to_string(x) + "," + std::to_string(y) + ") out of range for N=" +
                          std::to_string(N));
    }
}

Complex phase(std::uint64_t k, std::uint32_t N) {
    const double angle = 2.0 * kPi * static_cast<double>(k % N) / static_cast<double>(N);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<Qubit> joined(std::span<const Qubit> a, std::span<const Qubit> b) {
    std::vector<Qubit> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::kBell:
            return "bell";
        case Family::kW:
            return "w";
        case Family::kGhz:
            return "ghz";
    }
    return "?";
}

std::string_view to_string(Locking l) {
    switch (l) {
        case Locking::kDcnot:
            return "dcnot";
        case Locking::kQft2:
            return "qft";
        case Locking::kSwap:
            return "swap";
    }
    return "?";
}

Family parse_family(std::string_view s) {
    if (s == "bell") return Family::kBell;
    if (s == "w") return Family::kW;
    if (s == "ghz") return Family::kGhz;
    throw ConfigError("unknown channel family '" + std::string(s) + "'");
}

Locking parse_locking(std::string_view s) {
    if (s == "dcnot") return Locking::kDcnot;
    if (s == "qft" || s == "qft2") return Locking::kQft2;
    if (s == "swap") return Locking::kSwap;
    throw ConfigError("unknown locking operator '" + std::string(s) + "'");
}

std::size_t qubits_per_qunit(std::uint32_t N) {
    if (N < 2 || !std::has_single_bit(N)) {
        throw DimError("qudit dimension " + std::to_string(N) + " is not a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(N));
}

Amplitudes bell_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y) {
    check_symbols(N, x, y);
    Amplitudes v(std::size_t{N} * N);
    const double a = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::uint64_t j = 0; j < N; j++) {
        v[((j + y) % N) * N + j] = a * phase(j * x, N);
    }
    return v;
}

Amplitudes w_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y) {
    check_symbols(N, x, y);
    const std::uint64_t n2 = std::uint64_t{N} * N;
    Amplitudes v(n2 * N);
    const double a = 1.0 / std::sqrt(static_cast<double>(N));
    const double b = a / std::sqrt(2.0);
    // U(xy) sends sender value s to s - y with phase e^{2 pi i (s - y) x / N}.
    auto put = [&](std::uint64_t s, std::uint64_t receiver, double amp) {
        const std::uint64_t t = (s + N - y) % N;
        v[t * n2 + receiver] += amp * phase(t * x, N);
    };
    for (std::uint64_t j = 1; j < N; j++) {
        put(j - 1, j, b);      // |0 j>
        put(j - 1, j * N, b);  // |j 0>
    }
    put(N - 1, 0, a);
    return v;
}

Amplitudes ghz_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y) {
    check_symbols(N, x, y);
    const std::uint64_t n2 = std::uint64_t{N} * N;
    Amplitudes v(n2 * N);
    const double a = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::uint64_t j = 0; j < N; j++) {
        v[((j + y) % N) * n2 + j * N + j] = a * phase(j * x, N);
    }
    return v;
}

Amplitudes family_vector(Family f, std::uint32_t N, EncodedSymbols sym) {
    switch (f) {
        case Family::kBell:
            return bell_vector(N, sym.x, sym.y);
        case Family::kW:
            return w_vector(N, sym.x, sym.y);
        case Family::kGhz:
            return ghz_vector(N, sym.x, sym.y);
    }
    throw InternalError("unreachable family");
}

void encode(FactoredState& state, Family f, std::span<const Qubit> sender, EncodedSymbols sym) {
    const std::uint32_t N = std::uint32_t{1} << sender.size();
    check_symbols(N, sym.x, sym.y);
    if (f == Family::kW) {
        state.shift(sender, (N - sym.y) % N);
        state.rotate(sender, sym.x);
    } else {
        state.rotate(sender, sym.x);
        state.shift(sender, sym.y);
    }
}

void encode(FactoredState& state, Family f, std::string_view sender_reg, EncodedSymbols sym) {
    encode(state, f, state.layout().qubits(sender_reg), sym);
}

void encode_inverse(FactoredState& state, Family f, std::span<const Qubit> sender, EncodedSymbols sym) {
    const std::uint32_t N = std::uint32_t{1} << sender.size();
    check_symbols(N, sym.x, sym.y);
    if (f == Family::kW) {
        state.rotate(sender, (N - sym.x) % N);
        state.shift(sender, sym.y);
    } else {
        state.shift(sender, (N - sym.y) % N);
        state.rotate(sender, (N - sym.x) % N);
    }
}

DecodingBasis decoding_basis(Family f, std::uint32_t N) {
    std::vector<EncodedSymbols> labels;
    std::vector<Amplitudes> vectors;
    for (std::uint32_t x = 0; x < N; x++) {
        for (std::uint32_t y = 0; y < N; y++) {
            labels.push_back({x, y});
            vectors.push_back(family_vector(f, N, {x, y}));
        }
    }
    return DecodingBasis(N, std::move(labels), std::move(vectors));
}

void prepare_channel(FactoredState& state, Family f, std::span<const Qubit> sender, std::span<const Qubit> receiver) {
    const std::size_t n = sender.size();
    if (n == 0 || receiver.size() != receiver_width(f, n)) {
        throw LayoutError("channel " + std::string(to_string(f)) + " needs a receiver of " +
                          std::to_string(receiver_width(f, n)) + " qubits, got " + std::to_string(receiver.size()));
    }
    state.install(joined(sender, receiver), family_vector(f, std::uint32_t{1} << n, {0, 0}));
}

void prepare_channel(FactoredState& state, Family f, std::string_view sender_reg, std::string_view receiver_reg) {
    prepare_channel(state, f, state.layout().qubits(sender_reg), state.layout().qubits(receiver_reg));
}

void lock(FactoredState& state, Locking l, std::span<const Qubit> a, std::span<const Qubit> b) {
    if (l == Locking::kQft2) {
        if (a.size() != b.size()) {
            throw LayoutError("QFT2 locking needs registers of equal width");
        }
        state.qft(joined(a, b), false);
    } else {
        state.pairwise(a, b, lock_step(l));
    }
}

void unlock(FactoredState& state, Locking l, std::span<const Qubit> a, std::span<const Qubit> b) {
    if (l == Locking::kQft2) {
        if (a.size() != b.size()) {
            throw LayoutError("QFT2 locking needs registers of equal width");
        }
        state.qft(joined(a, b), true);
    } else {
        state.pairwise(a, b, unlock_step(l));
    }
}

PairOp lock_step(Locking l) {
    switch (l) {
        case Locking::kDcnot:
            return PairOp::kDcnot;
        case Locking::kSwap:
            return PairOp::kSwap;
        case Locking::kQft2:
            break;
    }
    throw ConfigError("QFT2 locking cannot be applied one qubit pair at a time");
}

PairOp unlock_step(Locking l) {
    switch (l) {
        case Locking::kDcnot:
            return PairOp::kDcnotInv;
        case Locking::kSwap:
            return PairOp::kSwap;
        case Locking::kQft2:
            break;
    }
    throw ConfigError("QFT2 locking cannot be undone one qubit pair at a time");
}

}  // namespace qsdc::channels
