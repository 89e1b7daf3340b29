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

#ifndef QSDC_QCORE_STATE_H
#define QSDC_QCORE_STATE_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/qcore/layout.h"
#include "qsdc/qcore/types.h"

namespace qsdc {

/// A pure state over an ordered list of qubits. amplitudes[i] is the
/// coefficient of the basis state whose binary digits (most significant
/// first) are the values of `qubits` in order.
struct StateFactor {
    std::vector<Qubit> qubits;
    Amplitudes amplitudes;

    double norm_squared() const;
};

/// The whole state as one vector, qubits sorted by global index.
struct DenseState {
    std::vector<Qubit> qubits;
    Amplitudes amplitudes;
};

/// Global pure state held as a tensor product of independent factors.
///
/// Factors are merged only when an operation touches qubits from more than
/// one of them, and split again when a projective measurement leaves the
/// measured qubits in a known pure state. Unitaries never renormalize.
class FactoredState {
   public:
    FactoredState() = default;

    /// Every register starts as its own factor in |0...0>; every extra qubit
    /// is a one-qubit factor in the named state. Overlap -> LayoutError.
    static FactoredState init(RegisterLayout layout, const std::map<Qubit, PureQubit>& extra_pure = {});

    const RegisterLayout& layout() const { return layout_; }

    /// Names a group of live qubits as a register.
    void add_register(std::string name, std::vector<Qubit> qubits);

    /// Fresh qubit, never used before, as its own factor.
    Qubit allocate(PureQubit s = PureQubit::kZero);
    /// Fresh qubits in |0...0>, registered under `name`.
    std::vector<Qubit> allocate_register(std::string name, std::size_t width);

    bool is_live(Qubit q) const { return q < factor_of_.size() && factor_of_[q] >= 0; }
    std::size_t num_qubits() const;
    const std::vector<StateFactor>& factors() const { return factors_; }
    std::size_t factor_index(Qubit q) const;
    const StateFactor& factor_containing(Qubit q) const { return factors_[factor_index(q)]; }

    /// Replaces the state of `qubits` with `amplitudes`. The qubits must not
    /// share a factor with anything else (LayoutError otherwise).
    void install(std::span<const Qubit> qubits, Amplitudes amplitudes);

    // Register-level operations.
    void apply_shift(std::string_view reg, std::uint64_t y);
    void apply_rotation(std::string_view reg, std::uint64_t x);
    void apply_pairwise(std::string_view reg_a, std::string_view reg_b, PairOp op);
    void apply_qft(std::span<const std::string> regs, bool inverse);

    // Qubit-level operations; registers are given as ordered qubit arrays.

    /// |j> -> |j + y mod 2^len>.
    void shift(std::span<const Qubit> reg, std::uint64_t y);
    /// |j> -> e^{2 pi i j x / 2^len} |j>, applied one qubit at a time.
    void rotate(std::span<const Qubit> reg, std::uint64_t x);
    void apply_pair_step(Qubit a, Qubit b, PairOp op);
    void pairwise(std::span<const Qubit> a, std::span<const Qubit> b, PairOp op);
    /// Fourier transform over the concatenated qubits (first qubit most significant).
    void qft(std::span<const Qubit> qubits, bool inverse);
    /// Multiplies the |1> amplitude of `q` by `phase`.
    void phase(Qubit q, Complex phase);
    /// Dense unitary, row-major dim x dim, dim = 2^|qubits|.
    void apply_matrix(std::span<const Qubit> qubits, std::span<const Complex> matrix);

    // Measurement kernels; see measure.h for the sampled operations.

    /// ||(<v| (x) I) psi||^2 for each v over `qubits`.
    std::vector<double> overlap_probabilities(std::span<const Qubit> qubits, std::span<const Amplitudes> vectors) const;
    /// Collapses onto |v> on `qubits` and splits them into their own factor.
    /// Returns the probability of that outcome. Throws InternalError if zero.
    double collapse_onto(std::span<const Qubit> qubits, const Amplitudes& v);
    /// Projects onto the orthogonal complement of `vectors` and renormalizes.
    double collapse_complement(std::span<const Qubit> qubits, std::span<const Amplitudes> vectors);

    double norm_squared() const;

    /// Fully merged copy, qubits in ascending global order. CapacityError past the cap.
    DenseState to_dense() const;

    /// Lines "bitstring<TAB>re<TAB>im", qubits in global index order.
    void dump(std::ostream& out) const;

   private:
    std::size_t merge(std::span<const Qubit> qubits);
    using Kernel = std::function<void(std::span<const Complex> in, std::span<Complex> out)>;
    void transform(std::span<const Qubit> qubits, const Kernel& kernel);
    void erase_factor(std::size_t index);
    void reindex(std::size_t index);
    void check_live(std::span<const Qubit> qubits) const;

    RegisterLayout layout_;
    std::vector<StateFactor> factors_;
    std::vector<std::int32_t> factor_of_;
};

}  // namespace qsdc

#endif  // QSDC_QCORE_STATE_H
