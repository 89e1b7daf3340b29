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

#ifndef QSDC_QCORE_MEASURE_H
#define QSDC_QCORE_MEASURE_H

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsdc/qcore/random.h"
#include "qsdc/qcore/state.h"

namespace qsdc {

/// A pair of cNits (x, y), each in [0, N).
struct EncodedSymbols {
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    friend auto operator<=>(const EncodedSymbols&, const EncodedSymbols&) = default;
};

std::string to_string(EncodedSymbols s);

/// An orthonormal family of (x, y)-labelled vectors. When the family does
/// not span the whole space, measurements carry an extra COMPLEMENT outcome.
class DecodingBasis {
   public:
    /// Throws BasisError when the Gram matrix deviates from identity by more
    /// than kNormTolerance, or DimError when vector sizes disagree.
    DecodingBasis(std::uint32_t qudit_dim, std::vector<EncodedSymbols> labels, std::vector<Amplitudes> vectors);

    std::uint32_t qudit_dim() const { return qudit_dim_; }
    std::size_t dimension() const { return vectors_.front().size(); }
    std::size_t size() const { return vectors_.size(); }
    bool complete() const { return vectors_.size() == dimension(); }
    const std::vector<EncodedSymbols>& labels() const { return labels_; }
    const std::vector<Amplitudes>& vectors() const { return vectors_; }
    const Amplitudes& vector(EncodedSymbols label) const;

   private:
    std::uint32_t qudit_dim_;
    std::vector<EncodedSymbols> labels_;
    std::vector<Amplitudes> vectors_;
};

struct ProjectiveOutcome {
    std::optional<EncodedSymbols> label;  // empty means COMPLEMENT
    double probability = 0;

    bool is_complement() const { return !label.has_value(); }
};

/// Born-rule measurement of `qubits` (first qubit most significant) in
/// `basis`. Outcomes are sampled by inverting the cumulative distribution
/// in label order with COMPLEMENT last; rounding residue goes to the last
/// outcome. The state is replaced by the normalized projection.
ProjectiveOutcome measure_projective(FactoredState& state, std::span<const Qubit> qubits, const DecodingBasis& basis,
                                     RandomSource& rng);
ProjectiveOutcome measure_projective(FactoredState& state, std::span<const std::string> regs,
                                     const DecodingBasis& basis, RandomSource& rng);

/// Born probabilities of every label (label order), then COMPLEMENT if the basis is incomplete.
std::vector<double> outcome_probabilities(const FactoredState& state, std::span<const Qubit> qubits,
                                          const DecodingBasis& basis);

/// Forces the outcome `label`; returns its probability. InternalError if it is zero.
double postselect(FactoredState& state, std::span<const Qubit> qubits, const DecodingBasis& basis,
                  EncodedSymbols label);

struct SingleOutcome {
    int bit = 0;
    double probability = 0;
};

/// Z basis reports 0 for |0>, 1 for |1>; X basis reports 0 for |+>, 1 for |->.
/// The measured qubit is left as its own one-qubit factor.
SingleOutcome measure_single(FactoredState& state, Qubit qubit, MeasureBasis basis, RandomSource& rng);

}  // namespace qsdc

#endif  // QSDC_QCORE_MEASURE_H
