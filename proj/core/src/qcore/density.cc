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

#include "qsdc/qcore/density.h"

#include <algorithm>
#include <map>
#include <set>

#include "qsdc/qcore/errors.h"

namespace qsdc {

DensityMatrix DensityMatrix::pure(const Amplitudes& v) {
    Eigen::VectorXcd col(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); i++) {
        col(static_cast<Eigen::Index>(i)) = v[i];
    }
    return DensityMatrix(col * col.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto d = static_cast<Eigen::Index>(dim);
    return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(dim));
}

bool DensityMatrix::is_valid(double tol) const {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        return false;
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(m_.trace() - Complex{1.0, 0.0}) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m_, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix DensityMatrix::kron(const DensityMatrix& other) const {
    const auto ra = m_.rows(), rb = other.m_.rows();
    Eigen::MatrixXcd out(ra * rb, ra * rb);
    for (Eigen::Index i = 0; i < ra; i++) {
        for (Eigen::Index j = 0; j < ra; j++) {
            out.block(i * rb, j * rb, rb, rb) = m_(i, j) * other.m_;
        }
    }
    return DensityMatrix(std::move(out));
}

DensityMatrix reduced_density(const FactoredState& state, std::span<const Qubit> keep) {
    if (keep.empty()) {
        throw LayoutError("reduced_density: nothing to keep");
    }
    if (keep.size() > kMaxDensityQubits) {
        throw CapacityError("reduced_density: " + std::to_string(keep.size()) + " qubits exceeds cap of " +
                            std::to_string(kMaxDensityQubits));
    }
    std::set<Qubit> distinct(keep.begin(), keep.end());
    if (distinct.size() != keep.size()) {
        throw LayoutError("reduced_density: a qubit is listed twice");
    }
    const std::size_t total = keep.size();

    // Keep positions grouped by the factor that holds them.
    std::map<std::size_t, std::vector<std::size_t>> by_factor;
    for (std::size_t p = 0; p < total; p++) {
        by_factor[state.factor_index(keep[p])].push_back(p);
    }

    struct Part {
        std::vector<std::size_t> positions;  // keep positions, in keep order
        Eigen::MatrixXcd rho;
    };
    std::vector<Part> parts;
    for (const auto& [fi, positions] : by_factor) {
        const StateFactor& f = state.factors()[fi];
        const std::size_t k = f.qubits.size();
        const std::size_t m = positions.size();
        std::vector<std::uint64_t> offsets(std::size_t{1} << m, 0);
        std::uint64_t mask = 0;
        std::vector<std::uint64_t> bit(m);
        for (std::size_t i = 0; i < m; i++) {
            auto it = std::find(f.qubits.begin(), f.qubits.end(), keep[positions[i]]);
            bit[i] = std::uint64_t{1} << (k - 1 - static_cast<std::size_t>(it - f.qubits.begin()));
            mask |= bit[i];
        }
        for (std::uint64_t s = 0; s < offsets.size(); s++) {
            for (std::size_t i = 0; i < m; i++) {
                if ((s >> (m - 1 - i)) & 1) {
                    offsets[s] |= bit[i];
                }
            }
        }
        const auto d = static_cast<Eigen::Index>(offsets.size());
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
        Eigen::VectorXcd g(d);
        for (std::uint64_t base = 0; base < f.amplitudes.size(); base++) {
            if (base & mask) {
                continue;
            }
            for (Eigen::Index s = 0; s < d; s++) {
                g(s) = f.amplitudes[base | offsets[static_cast<std::size_t>(s)]];
            }
            rho.noalias() += g * g.adjoint();
        }
        parts.push_back(Part{positions, std::move(rho)});
    }

    const std::size_t dim = std::size_t{1} << total;
    // sub[f][a] = index into part f's matrix for full index a
    std::vector<std::vector<Eigen::Index>> sub(parts.size(), std::vector<Eigen::Index>(dim));
    for (std::size_t pi = 0; pi < parts.size(); pi++) {
        const auto& pos = parts[pi].positions;
        const std::size_t m = pos.size();
        for (std::size_t a = 0; a < dim; a++) {
            Eigen::Index s = 0;
            for (std::size_t i = 0; i < m; i++) {
                if ((a >> (total - 1 - pos[i])) & 1) {
                    s |= Eigen::Index{1} << (m - 1 - i);
                }
            }
            sub[pi][a] = s;
        }
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd rho(d, d);
    for (std::size_t a = 0; a < dim; a++) {
        for (std::size_t b = 0; b < dim; b++) {
            Complex v = 1;
            for (std::size_t pi = 0; pi < parts.size(); pi++) {
                v *= parts[pi].rho(sub[pi][a], sub[pi][b]);
            }
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
        }
    }
    DensityMatrix out(std::move(rho));
    if (!out.is_valid()) {
        throw InternalError("partial trace produced an invalid density matrix");
    }
    return out;
}

DensityMatrix reduced_density(const FactoredState& state, std::span<const std::string> keep_regs) {
    auto qubits = state.layout().concat(keep_regs);
    return reduced_density(state, qubits);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimError("trace_distance: dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    Eigen::MatrixXcd diff = a.matrix() - b.matrix();
    // Symmetrize away rounding so the Hermitian solver applies.
    diff = (diff + diff.adjoint().eval()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(diff, Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

double fidelity_pure(const FactoredState& state, std::span<const Qubit> qubits, const Amplitudes& reference) {
    if (reference.size() != (std::size_t{1} << qubits.size())) {
        throw DimError("fidelity_pure: reference has dimension " + std::to_string(reference.size()));
    }
    DensityMatrix rho = reduced_density(state, qubits);
    Eigen::VectorXcd ref(static_cast<Eigen::Index>(reference.size()));
    for (std::size_t i = 0; i < reference.size(); i++) {
        ref(static_cast<Eigen::Index>(i)) = reference[i];
    }
    double f = (ref.adjoint() * rho.matrix() * ref)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity_pure(const FactoredState& state, std::span<const std::string> regs, const Amplitudes& reference) {
    auto qubits = state.layout().concat(regs);
    return fidelity_pure(state, qubits, reference);
}

}  // namespace qsdc
