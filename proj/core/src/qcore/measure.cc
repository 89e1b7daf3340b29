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

#include "qsdc/qcore/measure.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsdc/qcore/errors.h"

namespace qsdc {

std::string to_string(EncodedSymbols s) { return "(" + std::to_string(s.x) + "," + std::to_string(s.y) + ")"; }

DecodingBasis::DecodingBasis(std::uint32_t qudit_dim, std::vector<EncodedSymbols> labels,
                             std::vector<Amplitudes> vectors)
    : qudit_dim_(qudit_dim), labels_(std::move(labels)), vectors_(std::move(vectors)) {
    if (vectors_.empty() || labels_.size() != vectors_.size()) {
        throw BasisError("decoding basis needs one label per vector");
    }
    const std::size_t dim = vectors_.front().size();
    if (vectors_.size() > dim) {
        throw BasisError("more basis vectors than dimensions");
    }
    for (const auto& v : vectors_) {
        if (v.size() != dim) {
            throw DimError("basis vectors have different dimensions");
        }
    }
    for (std::size_t a = 0; a < vectors_.size(); a++) {
        for (std::size_t b = a; b < vectors_.size(); b++) {
            Complex g = 0;
            for (std::size_t i = 0; i < dim; i++) {
                g += std::conj(vectors_[a][i]) * vectors_[b][i];
            }
            double expected = a == b ? 1.0 : 0.0;
            if (std::abs(g - expected) > kNormTolerance) {
                throw BasisError("basis vectors " + to_string(labels_[a]) + " and " + to_string(labels_[b]) +
                                 " are not orthonormal");
            }
        }
    }
}

const Amplitudes& DecodingBasis::vector(EncodedSymbols label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw BasisError("no basis vector labelled " + to_string(label));
    }
    return vectors_[static_cast<std::size_t>(it - labels_.begin())];
}

std::vector<double> outcome_probabilities(const FactoredState& state, std::span<const Qubit> qubits,
                                          const DecodingBasis& basis) {
    if ((std::size_t{1} << qubits.size()) != basis.dimension()) {
        throw DimError("basis dimension " + std::to_string(basis.dimension()) + " does not match " +
                       std::to_string(qubits.size()) + " qubits");
    }
    auto probs = state.overlap_probabilities(qubits, basis.vectors());
    double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (total > 1.0 + kNormTolerance) {
        throw InternalError("outcome probabilities sum to " + std::to_string(total));
    }
    if (basis.complete()) {
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw InternalError("complete-basis probabilities sum to " + std::to_string(total));
        }
    } else {
        probs.push_back(std::max(0.0, 1.0 - total));
    }
    return probs;
}

ProjectiveOutcome measure_projective(FactoredState& state, std::span<const Qubit> qubits, const DecodingBasis& basis,
                                     RandomSource& rng) {
    auto probs = outcome_probabilities(state, qubits, basis);
    const double u = rng.uniform();
    std::size_t pick = probs.size() - 1;
    double cumulative = 0;
    for (std::size_t i = 0; i + 1 < probs.size(); i++) {
        cumulative += probs[i];
        if (u < cumulative) {
            pick = i;
            break;
        }
    }
    // Residue lands on the last outcome; never pick something impossible.
    while (probs[pick] <= 0.0 && pick > 0) {
        --pick;
    }
    ProjectiveOutcome out;
    if (pick < basis.size()) {
        out.label = basis.labels()[pick];
        out.probability = probs[pick];
        state.collapse_onto(qubits, basis.vectors()[pick]);
    } else {
        out.probability = probs[pick];
        state.collapse_complement(qubits, basis.vectors());
    }
    return out;
}

ProjectiveOutcome measure_projective(FactoredState& state, std::span<const std::string> regs,
                                     const DecodingBasis& basis, RandomSource& rng) {
    auto qubits = state.layout().concat(regs);
    return measure_projective(state, qubits, basis, rng);
}

double postselect(FactoredState& state, std::span<const Qubit> qubits, const DecodingBasis& basis,
                  EncodedSymbols label) {
    if ((std::size_t{1} << qubits.size()) != basis.dimension()) {
        throw DimError("basis dimension does not match qubit count");
    }
    return state.collapse_onto(qubits, basis.vector(label));
}

SingleOutcome measure_single(FactoredState& state, Qubit qubit, MeasureBasis basis, RandomSource& rng) {
    const Amplitudes v0 = amplitudes_of(basis == MeasureBasis::kZ ? PureQubit::kZero : PureQubit::kPlus);
    const Amplitudes v1 = amplitudes_of(basis == MeasureBasis::kZ ? PureQubit::kOne : PureQubit::kMinus);
    const Amplitudes vs[2] = {v0, v1};
    const Qubit target[1] = {qubit};
    auto probs = state.overlap_probabilities(target, vs);
    int bit = rng.uniform() < probs[0] ? 0 : 1;
    if (probs[bit] <= 0.0) {
        bit = 1 - bit;
    }
    SingleOutcome out{bit, probs[static_cast<std::size_t>(bit)]};
    state.collapse_onto(target, vs[bit]);
    return out;
}

}  // namespace qsdc
