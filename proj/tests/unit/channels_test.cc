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

#include <gtest/gtest.h>

#include <cmath>

#include "qsdc/channels/channels.h"
#include "qsdc/qcore/density.h"
#include "qsdc/qcore/errors.h"
#include "support/dense_oracle.h"

namespace qsdc::channels {
namespace {

using testing::DenseOracle;

std::vector<Qubit> range(Qubit from, std::size_t count) {
    std::vector<Qubit> v;
    for (std::size_t i = 0; i < count; i++) v.push_back(from + static_cast<Qubit>(i));
    return v;
}

double inner_abs(const Amplitudes& a, const Amplitudes& b) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); i++) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

TEST(Channels, QubitsPerQunit) {
    EXPECT_EQ(qubits_per_qunit(2), 1u);
    EXPECT_EQ(qubits_per_qunit(8), 3u);
    EXPECT_THROW(qubits_per_qunit(6), DimError);
    EXPECT_THROW(qubits_per_qunit(1), DimError);
}

TEST(Channels, ParseNames) {
    EXPECT_EQ(parse_family("ghz"), Family::kGhz);
    EXPECT_EQ(parse_locking("qft"), Locking::kQft2);
    EXPECT_EQ(parse_locking("qft2"), Locking::kQft2);
    EXPECT_THROW(parse_family("cluster"), ConfigError);
    EXPECT_THROW(parse_locking("cnot"), ConfigError);
    EXPECT_EQ(to_string(Locking::kSwap), "swap");
}

TEST(Channels, BellVectorWrittenOut) {
    // N = 2, (x, y) = (1, 1): (|10> - |01>) / sqrt 2.
    Amplitudes v = bell_vector(2, 1, 1);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(v[0b10] - Complex(h, 0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(v[0b01] - Complex(-h, 0)), 0, 1e-15);
}

TEST(Channels, GhzVectorWrittenOut) {
    // N = 2, (0, 1): (|1>|00> + |0>|11>) / sqrt 2.
    Amplitudes v = ghz_vector(2, 0, 1);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(v[0b100] - h), 0, 1e-15);
    EXPECT_NEAR(std::abs(v[0b011] - h), 0, 1e-15);
}

TEST(Channels, WVectorReferenceState) {
    // N = 2, (0, 0): (1/sqrt 2)[(1/sqrt 2)|0>(|01> + |10>) + |1>|00>].
    Amplitudes v = w_vector(2, 0, 0);
    EXPECT_NEAR(std::abs(v[0b001] - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(v[0b010] - 0.5), 0, 1e-15);
    EXPECT_NEAR(std::abs(v[0b100] - 1 / std::sqrt(2.0)), 0, 1e-15);
}

class FamilyTest : public ::testing::TestWithParam<std::tuple<Family, std::uint32_t>> {};

TEST_P(FamilyTest, EncodingMatchesFamilyVector) {
    const auto [f, N] = GetParam();
    const std::size_t n = qubits_per_qunit(N);
    const std::size_t w = receiver_width(f, n);
    for (std::uint32_t x = 0; x < N; x++) {
        for (std::uint32_t y = 0; y < N; y++) {
            RegisterLayout l;
            l.add("A", range(0, n));
            l.add("B", range(static_cast<Qubit>(n), w));
            FactoredState st = FactoredState::init(l);
            prepare_channel(st, f, "A", "B");
            encode(st, f, "A", {x, y});
            const Amplitudes want = family_vector(f, N, {x, y});
            EXPECT_NEAR(inner_abs(st.to_dense().amplitudes, want), 1.0, 1e-12) << x << "," << y;
            encode_inverse(st, f, l.qubits("A"), {x, y});
            EXPECT_NEAR(inner_abs(st.to_dense().amplitudes, family_vector(f, N, {0, 0})), 1.0, 1e-12);
        }
    }
}

TEST_P(FamilyTest, EncodedVectorsAreOrthonormal) {
    const auto [f, N] = GetParam();
    DecodingBasis basis = decoding_basis(f, N);  // throws BasisError otherwise
    EXPECT_EQ(basis.size(), static_cast<std::size_t>(N) * N);
    EXPECT_EQ(basis.complete(), f == Family::kBell);
    EXPECT_EQ(basis.labels().front(), (EncodedSymbols{0, 0}));
    EXPECT_EQ(basis.labels()[1], (EncodedSymbols{0, 1}));
}

TEST_P(FamilyTest, SenderIsMaximallyMixed) {
    const auto [f, N] = GetParam();
    const std::size_t n = qubits_per_qunit(N);
    RegisterLayout l;
    l.add("A", range(0, n));
    l.add("B", range(static_cast<Qubit>(n), receiver_width(f, n)));
    FactoredState st = FactoredState::init(l);
    prepare_channel(st, f, "A", "B");
    DensityMatrix rho = reduced_density(st, l.qubits("A"));
    EXPECT_NEAR(trace_distance(rho, DensityMatrix::maximally_mixed(N)), 0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(All, FamilyTest,
                         ::testing::Combine(::testing::Values(Family::kBell, Family::kW, Family::kGhz),
                                            ::testing::Values(2u, 4u)));

TEST(Channels, WBasisOrthonormalAtEight) {
    EXPECT_NO_THROW({
        const DecodingBasis basis = decoding_basis(Family::kW, 8);
        EXPECT_EQ(basis.size(), 64u);
    });
}

TEST(Channels, SymbolRange) {
    RegisterLayout l{{"A", {0}}, {"B", {1}}};
    FactoredState st = FactoredState::init(l);
    EXPECT_THROW(encode(st, Family::kBell, "A", {2, 0}), SymbolError);
    EXPECT_THROW(bell_vector(2, 0, 3), SymbolError);
}

TEST(Channels, ReceiverWidthChecked) {
    RegisterLayout l{{"A", {0}}, {"B", {1}}};
    FactoredState st = FactoredState::init(l);
    EXPECT_THROW(prepare_channel(st, Family::kGhz, "A", "B"), LayoutError);
}

TEST(Locking, MatchesOracleAndInverts) {
    for (Locking lk : {Locking::kDcnot, Locking::kQft2, Locking::kSwap}) {
        RegisterLayout l{{"A1", {0, 1}}, {"A2", {2, 3}}};
        FactoredState st = FactoredState::init(l);
        st.apply_shift("A1", 3);
        st.apply_shift("A2", 1);
        DenseOracle o = DenseOracle::from(st.to_dense());
        lock(st, lk, l.qubits("A1"), l.qubits("A2"));
        const testing::Mat u = lk == Locking::kDcnot  ? testing::dcnot_matrix(4)
                               : lk == Locking::kSwap ? testing::swap_matrix(4)
                                                      : testing::qft_matrix(16, false);
        o.apply({0, 1, 2, 3}, u);
        EXPECT_LE(o.max_abs_diff(st.to_dense()), 1e-12) << to_string(lk);
        unlock(st, lk, l.qubits("A1"), l.qubits("A2"));
        EXPECT_NEAR(std::abs(st.to_dense().amplitudes[0b1101]), 1.0, 1e-12);
    }
}

TEST(Locking, StepsComposeToFullLock) {
    EXPECT_EQ(lock_step(Locking::kDcnot), PairOp::kDcnot);
    EXPECT_EQ(unlock_step(Locking::kDcnot), PairOp::kDcnotInv);
    EXPECT_EQ(unlock_step(Locking::kSwap), PairOp::kSwap);
    EXPECT_THROW(lock_step(Locking::kQft2), ConfigError);
    EXPECT_THROW(unlock_step(Locking::kQft2), ConfigError);
    EXPECT_FALSE(pairwise_decomposable(Locking::kQft2));

    RegisterLayout l{{"A1", {0, 1, 2}}, {"A2", {3, 4, 5}}};
    FactoredState a = FactoredState::init(l);
    a.apply_shift("A1", 5);
    a.apply_shift("A2", 6);
    FactoredState b = a;
    lock(a, Locking::kDcnot, l.qubits("A1"), l.qubits("A2"));
    for (Qubit i = 0; i < 3; i++) b.apply_pair_step(i, i + 3, PairOp::kDcnot);
    // 5 = 101, 6 = 110 -> A1 = 6, A2 = 5 ^ 6 = 3.
    EXPECT_NEAR(std::abs(a.to_dense().amplitudes[(6 << 3) | 3]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(b.to_dense().amplitudes[(6 << 3) | 3]), 1.0, 1e-12);
}

}  // namespace
}  // namespace qsdc::channels
