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

#ifndef QSDC_QCORE_DENSITY_H
#define QSDC_QCORE_DENSITY_H

#include <span>
#include <string>

#include <Eigen/Dense>

#include "qsdc/qcore/state.h"

namespace qsdc {

/// Largest subsystem reduced_density will build (a 2^10 x 2^10 matrix).
inline constexpr std::size_t kMaxDensityQubits = 10;

/// Density matrix of a subsystem. Produced only by partial traces and by
/// the closed-form reference states used in the hiding checks.
class DensityMatrix {
   public:
    explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}

    static DensityMatrix pure(const Amplitudes& v);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    /// Hermitian, unit trace and positive semidefinite, each within `tol`.
    bool is_valid(double tol = kNormTolerance) const;

    /// this (x) other, this as the more significant factor.
    DensityMatrix kron(const DensityMatrix& other) const;

   private:
    Eigen::MatrixXcd m_;
};

/// Partial trace keeping `keep` (first qubit most significant). Throws
/// CapacityError past kMaxDensityQubits and InternalError if the result is
/// not a valid density matrix.
DensityMatrix reduced_density(const FactoredState& state, std::span<const Qubit> keep);
DensityMatrix reduced_density(const FactoredState& state, std::span<const std::string> keep_regs);

/// (1/2) * sum of singular values of (a - b). DimError on size mismatch.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// <ref| rho |ref> for the reduced state of `qubits`, clamped to [0, 1].
double fidelity_pure(const FactoredState& state, std::span<const Qubit> qubits, const Amplitudes& reference);
double fidelity_pure(const FactoredState& state, std::span<const std::string> regs, const Amplitudes& reference);

}  // namespace qsdc

#endif  // QSDC_QCORE_DENSITY_H
