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
#include <sstream>
#include <string>

#include "qsdc/qcore/density.h"
#include "qsdc/qcore/errors.h"
#include "qsdc/qcore/layout.h"
#include "qsdc/qcore/measure.h"
#include "qsdc/qcore/random.h"
#include "qsdc/qcore/state.h"
#include "support/dense_oracle.h"

namespace qsdc {
namespace {

using testing::DenseOracle;

RegisterLayout two_regs(std::size_t w) {
    RegisterLayout l;
    std::vector<Qubit> a, b;
    for (std::size_t i = 0; i < w; i++) a.push_back(static_cast<Qubit>(i));
    for (std::size_t i = 0; i < w; i++) b.push_back(static_cast<Qubit>(w + i));
    l.add("A", a);
    l.add("B", b);
    return l;
}

TEST(Layout, RejectsOverlapAndDuplicates) {
    RegisterLayout l;
    l.add("A", {0, 1});
    EXPECT_THROW(l.add("A", {2}), LayoutError);
    EXPECT_THROW(l.add("B", {1, 2}), LayoutError);
    EXPECT_THROW(l.add("C", {3, 3}), LayoutError);
    EXPECT_THROW(l.add("D", {}), LayoutError);
    EXPECT_EQ(l.dim("A"), 4u);
    EXPECT_EQ(l.extent(), 2u);
}

TEST(Layout, ConcatKeepsNameOrder) {
    RegisterLayout l{{"A", {0, 1}}, {"B", {4, 2}}};
    std::vector<std::string> names{"B", "A"};
    EXPECT_EQ(l.concat(names), (std::vector<Qubit>{4, 2, 0, 1}));
}

TEST(State, InitIsAllZeros) {
    FactoredState st = FactoredState::init(two_regs(2));
    EXPECT_EQ(st.num_qubits(), 4u);
    EXPECT_EQ(st.factors().size(), 2u);
    DenseState d = st.to_dense();
    EXPECT_EQ(d.amplitudes[0], Complex(1, 0));
    EXPECT_NEAR(st.norm_squared(), 1.0, 1e-15);
}

TEST(State, ShiftIsBigEndian) {
    FactoredState st = FactoredState::init(two_regs(2));
    st.apply_shift("A", 1);  // |00> -> |01>: last qubit of A flips
    DenseState d = st.to_dense();
    // Global order A0 A1 B0 B1, value 0b0100.
    EXPECT_NEAR(std::abs(d.amplitudes[0b0100]), 1.0, 1e-15);
    st.apply_shift("A", 7);  // (1 + 7) mod 4 = 0
    EXPECT_NEAR(std::abs(st.to_dense().amplitudes[0]), 1.0, 1e-15);
}

TEST(State, DcnotTruthTable) {
    for (std::uint64_t x = 0; x < 4; x++) {
        for (std::uint64_t y = 0; y < 4; y++) {
            FactoredState st = FactoredState::init(two_regs(2));
            st.apply_shift("A", x);
            st.apply_shift("B", y);
            st.apply_pairwise("A", "B", PairOp::kDcnot);
            const std::size_t want = (y << 2) | (x ^ y);
            EXPECT_NEAR(std::abs(st.to_dense().amplitudes[want]), 1.0, 1e-15) << x << "," << y;
            st.apply_pairwise("A", "B", PairOp::kDcnotInv);
            EXPECT_NEAR(std::abs(st.to_dense().amplitudes[(x << 2) | y]), 1.0, 1e-15);
        }
    }
}

TEST(State, SwapExchangesRegisters) {
    FactoredState st = FactoredState::init(two_regs(2));
    st.apply_shift("A", 3);
    st.apply_pairwise("A", "B", PairOp::kSwap);
    EXPECT_NEAR(std::abs(st.to_dense().amplitudes[0b0011]), 1.0, 1e-15);
}

TEST(State, RotationPhases) {
    FactoredState st = FactoredState::init(two_regs(2));
    std::vector<Complex> plus(4, Complex(0.5, 0));
    std::vector<Qubit> a{0, 1};
    st.install(a, plus);
    st.apply_rotation("A", 1);
    DenseState d = st.to_dense();
    for (std::size_t j = 0; j < 4; j++) {
        const Complex want = 0.5 * std::polar(1.0, 2 * kPi * static_cast<double>(j) / 4.0);
        EXPECT_NEAR(std::abs(d.amplitudes[j << 2] - want), 0, 1e-12);
    }
}

TEST(State, QftMatchesOracle) {
    FactoredState st = FactoredState::init(two_regs(2));
    st.apply_shift("A", 2);
    st.apply_shift("B", 1);
    std::vector<std::string> regs{"A", "B"};
    st.apply_qft(regs, false);
    DenseOracle o(4);
    o.apply({0, 1}, testing::shift_matrix(4, 2));
    o.apply({2, 3}, testing::shift_matrix(4, 1));
    o.apply({0, 1, 2, 3}, testing::qft_matrix(16, false));
    EXPECT_LE(o.max_abs_diff(st.to_dense()), 1e-12);
    st.apply_qft(regs, true);
    EXPECT_NEAR(std::abs(st.to_dense().amplitudes[0b1001]), 1.0, 1e-12);
}

TEST(State, InstallRejectsSharedFactor) {
    FactoredState st = FactoredState::init(two_regs(1));
    st.apply_pairwise("A", "B", PairOp::kDcnot);  // merges A and B
    std::vector<Qubit> a{0};
    EXPECT_THROW(st.install(a, {1, 0}), LayoutError);
}

TEST(State, CapacityLimit) {
    RegisterLayout l;
    std::vector<Qubit> a, b;
    for (Qubit i = 0; i < 13; i++) a.push_back(i);
    for (Qubit i = 13; i < 26; i++) b.push_back(i);
    l.add("A", a);
    l.add("B", b);
    FactoredState st = FactoredState::init(l);
    EXPECT_THROW(st.apply_pairwise("A", "B", PairOp::kSwap), CapacityError);
}

TEST(State, AllocateGivesFreshQubits) {
    FactoredState st = FactoredState::init(two_regs(1));
    const Qubit q = st.allocate(PureQubit::kPlus);
    EXPECT_EQ(q, 2u);
    EXPECT_TRUE(st.is_live(q));
    EXPECT_EQ(st.factor_containing(q).qubits.size(), 1u);
    auto reg = st.allocate_register("R", 2);
    EXPECT_EQ(reg, (std::vector<Qubit>{3, 4}));
    EXPECT_TRUE(st.layout().contains("R"));
}

TEST(State, DumpListsEveryBasisState) {
    FactoredState st = FactoredState::init(two_regs(1));
    std::ostringstream out;
    st.dump(out);
    std::string first;
    std::getline(std::istringstream(out.str()) >> std::ws, first);
    EXPECT_EQ(first.substr(0, 2), "00");
}

TEST(Measure, BasisRejectsNonOrthonormal) {
    std::vector<EncodedSymbols> labels{{0, 0}, {0, 1}};
    std::vector<Amplitudes> vecs{{1, 0}, {1, 0}};
    EXPECT_THROW(DecodingBasis(2, labels, vecs), BasisError);
    std::vector<Amplitudes> ragged{{1, 0}, {0, 1, 0}};
    EXPECT_THROW(DecodingBasis(2, labels, ragged), DimError);
}

TEST(Measure, ComplementOutcome) {
    FactoredState st = FactoredState::init(two_regs(1));
    st.apply_shift("A", 1);  // |10>
    DecodingBasis partial(2, {{0, 0}}, {{1, 0, 0, 0}});
    std::vector<Qubit> qs{0, 1};
    RandomSource rng(1);
    ProjectiveOutcome m = measure_projective(st, qs, partial, rng);
    EXPECT_TRUE(m.is_complement());
    EXPECT_NEAR(m.probability, 1.0, 1e-12);
}

TEST(Measure, ProbabilitiesSumToOne) {
    FactoredState st = FactoredState::init(two_regs(1));
    const double h = 1 / std::sqrt(2.0);
    std::vector<Qubit> a{0};
    st.install(a, {h, h});
    st.apply_pairwise("A", "B", PairOp::kDcnotInv);
    std::vector<Qubit> qs{0, 1};
    DecodingBasis z(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
                    {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    auto p = outcome_probabilities(st, qs, z);
    double sum = 0;
    for (double v : p) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[3], 0.5, 1e-12);
}

TEST(Measure, PostselectZeroProbabilityThrows) {
    FactoredState st = FactoredState::init(two_regs(1));
    std::vector<Qubit> qs{0, 1};
    DecodingBasis z(2, {{0, 0}, {1, 1}}, {{1, 0, 0, 0}, {0, 0, 0, 1}});
    EXPECT_THROW(postselect(st, qs, z, {1, 1}), InternalError);
    EXPECT_NEAR(postselect(st, qs, z, {0, 0}), 1.0, 1e-12);
}

TEST(Measure, SingleQubitConvention) {
    RandomSource rng(3);
    for (PureQubit s : {PureQubit::kZero, PureQubit::kOne, PureQubit::kPlus, PureQubit::kMinus}) {
        FactoredState st = FactoredState::init(RegisterLayout{}, {{0, s}});
        SingleOutcome o = measure_single(st, 0, basis_of(s), rng);
        EXPECT_EQ(o.bit, bit_of(s));
        EXPECT_NEAR(o.probability, 1.0, 1e-12);
    }
}

TEST(Measure, MeasurementSplitsFactor) {
    FactoredState st = FactoredState::init(two_regs(1));
    const double h = 1 / std::sqrt(2.0);
    std::vector<Qubit> a{0};
    st.install(a, {h, h});
    st.apply_pairwise("A", "B", PairOp::kDcnotInv);
    ASSERT_EQ(st.factors().size(), 1u);
    RandomSource rng(9);
    measure_single(st, 0, MeasureBasis::kZ, rng);
    EXPECT_EQ(st.factor_containing(0).qubits.size(), 1u);
    EXPECT_NEAR(st.norm_squared(), 1.0, 1e-12);
}

TEST(Density, BellReducedIsMaximallyMixed) {
    FactoredState st = FactoredState::init(two_regs(1));
    const double h = 1 / std::sqrt(2.0);
    std::vector<Qubit> a{0};
    st.install(a, {h, h});
    st.apply_pairwise("A", "B", PairOp::kDcnotInv);
    std::vector<Qubit> keep{1};
    DensityMatrix rho = reduced_density(st, keep);
    EXPECT_NEAR(trace_distance(rho, DensityMatrix::maximally_mixed(2)), 0, 1e-12);
    EXPECT_TRUE(rho.is_valid());
}

TEST(Density, TraceDistanceOfOrthogonalStates) {
    DensityMatrix a = DensityMatrix::pure({1, 0});
    DensityMatrix b = DensityMatrix::pure({0, 1});
    EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-12);
    EXPECT_THROW(trace_distance(a, DensityMatrix::maximally_mixed(4)), DimError);
}

TEST(Density, KronOrder) {
    DensityMatrix a = DensityMatrix::pure({0, 1});
    DensityMatrix b = DensityMatrix::pure({1, 0});
    EXPECT_NEAR(std::abs(a.kron(b)(2, 2) - Complex(1, 0)), 0, 1e-15);
}

TEST(Density, ReducedRespectsKeepOrder) {
    FactoredState st = FactoredState::init(two_regs(1));
    st.apply_shift("A", 1);  // |1>|0>
    std::vector<Qubit> ba{1, 0};
    DensityMatrix rho = reduced_density(st, ba);
    EXPECT_NEAR(rho(1, 1).real(), 1.0, 1e-12);  // |0>|1> in (B, A) order
}

TEST(Density, CapacityLimit) {
    RegisterLayout l;
    std::vector<Qubit> a;
    for (Qubit i = 0; i < 11; i++) a.push_back(i);
    l.add("A", a);
    FactoredState st = FactoredState::init(l);
    EXPECT_THROW(reduced_density(st, a), CapacityError);
}

TEST(Random, Reproducible) {
    RandomSource a(42), b(42);
    for (int i = 0; i < 100; i++) EXPECT_EQ(a.next_u64(), b.next_u64());
    RandomSource c(5);
    for (int i = 0; i < 1000; i++) {
        const auto v = c.below(7);
        EXPECT_LT(v, 7u);
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Random, SampleDistinct) {
    RandomSource r(8);
    auto s = r.sample_distinct(10, 6);
    ASSERT_EQ(s.size(), 6u);
    for (std::size_t i = 1; i < s.size(); i++) EXPECT_LT(s[i - 1], s[i]);
    EXPECT_LT(s.back(), 10u);
    EXPECT_EQ(r.sample_distinct(3, 3), (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Random, TrialStreams) {
    EXPECT_EQ(RandomSource::for_trial(10, 3).seed(), 13u);
}

}  // namespace
}  // namespace qsdc
