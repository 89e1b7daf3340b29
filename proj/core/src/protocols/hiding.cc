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

#include "qsdc/protocols/hiding.h"

#include <cmath>

#include "qsdc/channels/channels.h"
#include "qsdc/qcore/errors.h"

namespace qsdc::protocols {

namespace {

struct Channels {
    FactoredState state;
    std::vector<Qubit> A1, A2, B, C;
};

Channels prepare(Family family, std::size_t n) {
    const std::size_t wr = channels::receiver_width(family, n);
    Channels ch;
    Qubit next = 0;
    auto take = [&](std::size_t count) {
        std::vector<Qubit> qs;
        for (std::size_t i = 0; i < count; i++) qs.push_back(next++);
        return qs;
    };
    ch.A1 = take(n);
    ch.A2 = take(n);
    ch.B = take(wr);
    ch.C = take(wr);
    RegisterLayout layout{{"A1", ch.A1}, {"A2", ch.A2}, {"B", ch.B}, {"C", ch.C}};
    ch.state = FactoredState::init(std::move(layout));
    channels::prepare_channel(ch.state, family, ch.A1, ch.B);
    channels::prepare_channel(ch.state, family, ch.A2, ch.C);
    return ch;
}

std::vector<Qubit> concat(const std::vector<Qubit>& a, const std::vector<Qubit>& b) {
    std::vector<Qubit> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

DensityMatrix receiver_theory(Family family, std::uint32_t N) {
    const auto d = static_cast<Eigen::Index>(family == Family::kBell ? N : N * N);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const double inv = 1.0 / N;
    switch (family) {
        case Family::kBell:
            m = Eigen::MatrixXcd::Identity(d, d) * inv;
            break;
        case Family::kGhz:
            for (std::uint32_t j = 0; j < N; j++) {
                const auto jj = static_cast<Eigen::Index>(j * N + j);
                m(jj, jj) = inv;
            }
            break;
        case Family::kW: {
            m(0, 0) = inv;
            for (std::uint32_t j = 1; j < N; j++) {
                const auto a = static_cast<Eigen::Index>(j);      // |0 j>
                const auto b = static_cast<Eigen::Index>(j * N);  // |j 0>
                m(a, a) += 0.5 * inv;
                m(b, b) += 0.5 * inv;
                m(a, b) += 0.5 * inv;
                m(b, a) += 0.5 * inv;
            }
            break;
        }
    }
    return DensityMatrix(m);
}

DensityMatrix locked_theory(Family family, std::uint32_t N) {
    return DensityMatrix::maximally_mixed(N).kron(receiver_theory(family, N));
}

HidingReport verify_locking_hiding(Family family, Locking locking, std::uint32_t N) {
    if (N != 2 && N != 4) {
        throw DimError("hiding is checked exhaustively for N = 2 or 4");
    }
    const std::size_t n = channels::qubits_per_qunit(N);
    const DensityMatrix theory = locked_theory(family, N);
    const Channels fresh = prepare(family, n);
    const std::vector<Qubit> side1 = concat(fresh.A1, fresh.B);
    const std::vector<Qubit> side2 = concat(fresh.A2, fresh.C);

    HidingReport report;
    for (std::uint32_t b1 = 0; b1 < N; b1++) {
        for (std::uint32_t b2 = 0; b2 < N; b2++) {
            for (std::uint32_t c1 = 0; c1 < N; c1++) {
                for (std::uint32_t c2 = 0; c2 < N; c2++) {
                    Channels ch = fresh;
                    const EncodedSymbols b{b1, b2}, c{c1, c2};
                    channels::encode(ch.state, family, ch.A1, b);
                    channels::encode(ch.state, family, ch.A2, c);
                    channels::lock(ch.state, locking, ch.A1, ch.A2);
                    const double d = std::max(trace_distance(reduced_density(ch.state, side1), theory),
                                              trace_distance(reduced_density(ch.state, side2), theory));
                    if (report.encodings == 0 || d > report.max_distance) {
                        report.max_distance = d;
                        report.worst_b = b;
                        report.worst_c = c;
                    }
                    report.encodings++;
                }
            }
        }
    }
    return report;
}

PartialUnlockReport partial_unlock_hiding_check(std::size_t n, std::size_t s, Locking locking, std::size_t k) {
    if (!channels::pairwise_decomposable(locking)) {
        throw ConfigError("partial unlocking needs a pairwise-decomposable lock");
    }
    if (k > n) {
        throw ConfigError("k must lie in 0..n");
    }
    if (n == 0 || 2 * n + s > kMaxDensityQubits) {
        throw CapacityError("Bob's view would exceed " + std::to_string(kMaxDensityQubits) + " qubits");
    }
    const auto N = static_cast<std::uint32_t>(std::uint32_t{1} << n);
    const Channels fresh = prepare(Family::kBell, n);

    auto bob_view = [&](EncodedSymbols b, EncodedSymbols c, std::size_t unlocked) {
        Channels ch = fresh;
        channels::encode(ch.state, Family::kBell, ch.A1, b);
        channels::encode(ch.state, Family::kBell, ch.A2, c);
        std::vector<Qubit> stream1 = ch.A1, stream2 = ch.A2;
        for (std::size_t i = 0; i < s; i++) {
            stream1.push_back(ch.state.allocate(PureQubit::kZero));
            stream2.push_back(ch.state.allocate(PureQubit::kZero));
        }
        const PairOp lock_op = channels::lock_step(locking);
        for (std::size_t j = 0; j < stream1.size(); j++) {
            ch.state.apply_pair_step(stream1[j], stream2[j], lock_op);
        }
        const PairOp unlock_op = channels::unlock_step(locking);
        for (std::size_t j = 0; j < unlocked; j++) {
            ch.state.apply_pair_step(stream1[j], stream2[j], unlock_op);
        }
        return reduced_density(ch.state, concat(stream1, ch.B));
    };

    std::vector<EncodedSymbols> symbols;
    for (std::uint32_t x = 0; x < N; x++) {
        for (std::uint32_t y = 0; y < N; y++) {
            symbols.push_back({x, y});
        }
    }
    Eigen::MatrixXcd avg;
    for (EncodedSymbols b : symbols) {
        for (EncodedSymbols c : symbols) {
            const DensityMatrix r = bob_view(b, c, 0);
            avg = avg.size() == 0 ? r.matrix() : Eigen::MatrixXcd(avg + r.matrix());
        }
    }
    const DensityMatrix locked(avg / static_cast<double>(symbols.size() * symbols.size()));

    PartialUnlockReport report;
    report.k = k;
    for (EncodedSymbols c : symbols) {
        std::vector<DensityMatrix> views;
        for (EncodedSymbols b : symbols) {
            views.push_back(bob_view(b, c, k));
            report.distance_to_locked = std::max(report.distance_to_locked, trace_distance(views.back(), locked));
        }
        for (std::size_t i = 0; i < views.size(); i++) {
            for (std::size_t j = i + 1; j < views.size(); j++) {
                report.max_pairwise_distance = std::max(report.max_pairwise_distance, trace_distance(views[i], views[j]));
            }
        }
    }
    return report;
}

}  // namespace qsdc::protocols
