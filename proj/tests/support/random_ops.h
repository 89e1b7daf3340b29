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

// Random operation sequences replayed on a FactoredState and on the dense
// oracle side by side.

#ifndef QSDC_TESTS_SUPPORT_RANDOM_OPS_H
#define QSDC_TESTS_SUPPORT_RANDOM_OPS_H

#include <algorithm>
#include <cmath>
#include <vector>

#include "qsdc/qcore/random.h"
#include "qsdc/qcore/state.h"
#include "support/dense_oracle.h"

namespace qsdc::testing {

inline Mat pair_op_matrix(PairOp op) {
    switch (op) {
        case PairOp::kDcnot:
            return dcnot_matrix(2);
        case PairOp::kDcnotInv:
            return dcnot_inv_matrix(2);
        case PairOp::kSwap:
            return swap_matrix(2);
    }
    return {};
}

/// Q factor of a matrix with uniform random entries.
inline Mat random_unitary(RandomSource& rng, std::size_t dim) {
    Mat g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index r = 0; r < g.rows(); r++) {
        for (Eigen::Index c = 0; c < g.cols(); c++) g(r, c) = Cd(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
}

inline std::vector<Qubit> distinct(RandomSource& rng, std::size_t total, std::size_t count) {
    auto picked = rng.sample_distinct(static_cast<std::uint32_t>(total), static_cast<std::uint32_t>(count));
    std::vector<Qubit> qs(picked.begin(), picked.end());
    // Random order, so registers are not always ascending.
    for (std::size_t i = qs.size(); i > 1; i--) std::swap(qs[i - 1], qs[rng.below(i)]);
    return qs;
}

/// Applies `ops` random operations over `num_qubits` qubits to both
/// representations and returns the worst amplitude difference.
inline double random_sequence_error(RandomSource& rng, std::size_t num_qubits, std::size_t ops) {
    FactoredState st = FactoredState::init(RegisterLayout{});
    for (std::size_t i = 0; i < num_qubits; i++) st.allocate(PureQubit::kZero);
    DenseOracle o(num_qubits);
    for (std::size_t k = 0; k < ops; k++) {
        switch (rng.below(6)) {
            case 0: {
                const auto w = 1 + rng.below(std::min<std::size_t>(3, num_qubits));
                auto reg = distinct(rng, num_qubits, w);
                const auto y = rng.below(std::uint64_t{1} << w);
                st.shift(reg, y);
                o.apply(reg, shift_matrix(std::uint64_t{1} << w, y));
                break;
            }
            case 1: {
                const auto w = 1 + rng.below(std::min<std::size_t>(3, num_qubits));
                auto reg = distinct(rng, num_qubits, w);
                const auto x = rng.below(std::uint64_t{1} << w);
                st.rotate(reg, x);
                o.apply(reg, rotation_matrix(std::uint64_t{1} << w, x));
                break;
            }
            case 2: {
                if (num_qubits < 2) break;
                auto pair = distinct(rng, num_qubits, 2);
                const auto op = static_cast<PairOp>(rng.below(3));
                st.apply_pair_step(pair[0], pair[1], op);
                o.apply(pair, pair_op_matrix(op));
                break;
            }
            case 3: {
                const auto w = 1 + rng.below(std::min<std::size_t>(4, num_qubits));
                auto reg = distinct(rng, num_qubits, w);
                const bool inv = rng.coin();
                st.qft(reg, inv);
                o.apply(reg, qft_matrix(std::uint64_t{1} << w, inv));
                break;
            }
            case 4: {
                const auto w = 1 + rng.below(std::min<std::size_t>(2, num_qubits));
                auto reg = distinct(rng, num_qubits, w);
                const Mat u = random_unitary(rng, std::size_t{1} << w);
                std::vector<Complex> flat;
                for (Eigen::Index r = 0; r < u.rows(); r++) {
                    for (Eigen::Index c = 0; c < u.cols(); c++) flat.push_back(u(r, c));
                }
                st.apply_matrix(reg, flat);
                o.apply(reg, u);
                break;
            }
            default: {
                const Qubit q = static_cast<Qubit>(rng.below(num_qubits));
                const Cd ph = std::polar(1.0, kTwoPi * rng.uniform());
                st.phase(q, ph);
                Mat m = Mat::Identity(2, 2);
                m(1, 1) = ph;
                o.apply({q}, m);
                break;
            }
        }
    }
    return o.max_abs_diff(st.to_dense());
}

}  // namespace qsdc::testing

#endif  // QSDC_TESTS_SUPPORT_RANDOM_OPS_H
