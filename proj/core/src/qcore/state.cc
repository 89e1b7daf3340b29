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

#include "qsdc/qcore/state.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "qsdc/qcore/errors.h"

namespace qsdc {
namespace {

/// Where a group of target qubits sits inside a factor's index space.
struct SubIndex {
    std::vector<std::uint64_t> offsets;  // offsets[s] = factor bits for sub-index s
    std::uint64_t mask = 0;
};

SubIndex locate(const StateFactor& f, std::span<const Qubit> targets) {
    const std::size_t k = f.qubits.size();
    const std::size_t m = targets.size();
    std::vector<std::uint64_t> bit(m);
    for (std::size_t i = 0; i < m; i++) {
        auto it = std::find(f.qubits.begin(), f.qubits.end(), targets[i]);
        if (it == f.qubits.end()) {
            throw InternalError("qubit " + std::to_string(targets[i]) + " missing from its factor");
        }
        bit[i] = std::uint64_t{1} << (k - 1 - static_cast<std::size_t>(it - f.qubits.begin()));
    }
    SubIndex out;
    out.offsets.assign(std::size_t{1} << m, 0);
    for (std::uint64_t s = 0; s < out.offsets.size(); s++) {
        std::uint64_t off = 0;
        for (std::size_t i = 0; i < m; i++) {
            if ((s >> (m - 1 - i)) & 1) {
                off |= bit[i];
            }
        }
        out.offsets[s] = off;
    }
    for (auto b : bit) {
        out.mask |= b;
    }
    return out;
}

StateFactor kron(const StateFactor& a, const StateFactor& b) {
    StateFactor out;
    out.qubits = a.qubits;
    out.qubits.insert(out.qubits.end(), b.qubits.begin(), b.qubits.end());
    out.amplitudes.resize(a.amplitudes.size() * b.amplitudes.size());
    std::size_t i = 0;
    for (const auto& x : a.amplitudes) {
        for (const auto& y : b.amplitudes) {
            out.amplitudes[i++] = x * y;
        }
    }
    return out;
}

void require_distinct(std::span<const Qubit> qubits) {
    std::set<Qubit> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size()) {
        throw LayoutError("operation lists the same qubit twice");
    }
}

}  // namespace

double StateFactor::norm_squared() const {
    double total = 0;
    for (const auto& a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

FactoredState FactoredState::init(RegisterLayout layout, const std::map<Qubit, PureQubit>& extra_pure) {
    FactoredState state;
    Qubit extent = layout.extent();
    for (const auto& [q, _] : extra_pure) {
        for (const auto& [name, qubits] : layout.registers()) {
            if (std::find(qubits.begin(), qubits.end(), q) != qubits.end()) {
                throw LayoutError("extra qubit " + std::to_string(q) + " overlaps register '" + name + "'");
            }
        }
        extent = std::max(extent, q + 1);
    }
    state.factor_of_.assign(extent, -1);
    for (const auto& [name, qubits] : layout.registers()) {
        StateFactor f;
        f.qubits = qubits;
        f.amplitudes.assign(std::size_t{1} << qubits.size(), Complex{0, 0});
        f.amplitudes[0] = 1;
        state.factors_.push_back(std::move(f));
    }
    for (const auto& [q, s] : extra_pure) {
        state.factors_.push_back(StateFactor{{q}, amplitudes_of(s)});
    }
    state.layout_ = std::move(layout);
    state.reindex(0);
    return state;
}

void FactoredState::add_register(std::string name, std::vector<Qubit> qubits) {
    check_live(qubits);
    layout_.add(std::move(name), std::move(qubits));
}

Qubit FactoredState::allocate(PureQubit s) {
    auto q = static_cast<Qubit>(factor_of_.size());
    factor_of_.push_back(static_cast<std::int32_t>(factors_.size()));
    factors_.push_back(StateFactor{{q}, amplitudes_of(s)});
    return q;
}

std::vector<Qubit> FactoredState::allocate_register(std::string name, std::size_t width) {
    if (width == 0) {
        throw LayoutError("register '" + name + "' is empty");
    }
    std::vector<Qubit> qubits;
    for (std::size_t i = 0; i < width; i++) {
        qubits.push_back(allocate(PureQubit::kZero));
    }
    layout_.add(std::move(name), qubits);
    return qubits;
}

std::size_t FactoredState::num_qubits() const {
    return static_cast<std::size_t>(std::count_if(factor_of_.begin(), factor_of_.end(), [](auto i) { return i >= 0; }));
}

std::size_t FactoredState::factor_index(Qubit q) const {
    if (!is_live(q)) {
        throw LayoutError("qubit " + std::to_string(q) + " does not exist");
    }
    return static_cast<std::size_t>(factor_of_[q]);
}

void FactoredState::check_live(std::span<const Qubit> qubits) const {
    for (Qubit q : qubits) {
        if (!is_live(q)) {
            throw LayoutError("qubit " + std::to_string(q) + " does not exist");
        }
    }
}

void FactoredState::reindex(std::size_t from) {
    for (std::size_t i = from; i < factors_.size(); i++) {
        for (Qubit q : factors_[i].qubits) {
            factor_of_[q] = static_cast<std::int32_t>(i);
        }
    }
}

void FactoredState::erase_factor(std::size_t index) {
    factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(index));
    reindex(index);
}

std::size_t FactoredState::merge(std::span<const Qubit> qubits) {
    check_live(qubits);
    std::set<std::size_t> involved;
    for (Qubit q : qubits) {
        involved.insert(static_cast<std::size_t>(factor_of_[q]));
    }
    if (involved.size() == 1) {
        return *involved.begin();
    }
    std::size_t total = 0;
    for (auto i : involved) {
        total += factors_[i].qubits.size();
    }
    if (total > kMaxFactorQubits) {
        throw CapacityError("merging would create a factor of " + std::to_string(total) + " qubits (cap " +
                            std::to_string(kMaxFactorQubits) + ")");
    }
    auto it = involved.begin();
    std::size_t keep = *it;
    StateFactor merged = factors_[keep];
    for (++it; it != involved.end(); ++it) {
        merged = kron(merged, factors_[*it]);
    }
    factors_[keep] = std::move(merged);
    for (auto r = involved.rbegin(); r != involved.rend(); ++r) {
        if (*r != keep) {
            factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(*r));
        }
    }
    reindex(0);
    return static_cast<std::size_t>(factor_of_[qubits[0]]);
}

void FactoredState::transform(std::span<const Qubit> qubits, const Kernel& kernel) {
    require_distinct(qubits);
    std::size_t index = merge(qubits);
    StateFactor& f = factors_[index];
    SubIndex sub = locate(f, qubits);
    const std::size_t d = sub.offsets.size();
    std::vector<Complex> in(d), out(d);
    const std::uint64_t size = f.amplitudes.size();
    for (std::uint64_t base = 0; base < size; base++) {
        if (base & sub.mask) {
            continue;
        }
        for (std::size_t s = 0; s < d; s++) {
            in[s] = f.amplitudes[base | sub.offsets[s]];
        }
        kernel(in, out);
        for (std::size_t s = 0; s < d; s++) {
            f.amplitudes[base | sub.offsets[s]] = out[s];
        }
    }
}

void FactoredState::install(std::span<const Qubit> qubits, Amplitudes amplitudes) {
    check_live(qubits);
    require_distinct(qubits);
    if (amplitudes.size() != (std::size_t{1} << qubits.size())) {
        throw LayoutError("install: expected " + std::to_string(std::size_t{1} << qubits.size()) + " amplitudes");
    }
    StateFactor fresh{{qubits.begin(), qubits.end()}, std::move(amplitudes)};
    if (std::abs(fresh.norm_squared() - 1.0) > kNormTolerance) {
        throw LayoutError("install: amplitudes are not normalized");
    }
    std::set<Qubit> wanted(qubits.begin(), qubits.end());
    std::set<std::size_t> involved;
    for (Qubit q : qubits) {
        involved.insert(static_cast<std::size_t>(factor_of_[q]));
    }
    for (auto i : involved) {
        for (Qubit q : factors_[i].qubits) {
            if (!wanted.contains(q)) {
                throw LayoutError("install: qubit " + std::to_string(q) + " shares a factor with the target qubits");
            }
        }
    }
    for (auto r = involved.rbegin(); r != involved.rend(); ++r) {
        factors_.erase(factors_.begin() + static_cast<std::ptrdiff_t>(*r));
    }
    factors_.push_back(std::move(fresh));
    reindex(0);
}

void FactoredState::apply_shift(std::string_view reg, std::uint64_t y) { shift(layout_.qubits(reg), y); }

void FactoredState::apply_rotation(std::string_view reg, std::uint64_t x) { rotate(layout_.qubits(reg), x); }

void FactoredState::apply_pairwise(std::string_view reg_a, std::string_view reg_b, PairOp op) {
    pairwise(layout_.qubits(reg_a), layout_.qubits(reg_b), op);
}

void FactoredState::apply_qft(std::span<const std::string> regs, bool inverse) {
    std::set<std::string_view> names(regs.begin(), regs.end());
    if (names.size() != regs.size()) {
        throw LayoutError("apply_qft: registers must be distinct");
    }
    qft(layout_.concat(regs), inverse);
}

void FactoredState::shift(std::span<const Qubit> reg, std::uint64_t y) {
    if (reg.empty() || reg.size() > 63) {
        throw LayoutError("shift: bad register width");
    }
    const std::uint64_t mask = (std::uint64_t{1} << reg.size()) - 1;
    y &= mask;
    check_live(reg);
    if (y == 0) {
        return;
    }
    transform(reg, [y, mask](std::span<const Complex> in, std::span<Complex> out) {
        for (std::uint64_t s = 0; s < in.size(); s++) {
            out[(s + y) & mask] = in[s];
        }
    });
}

void FactoredState::rotate(std::span<const Qubit> reg, std::uint64_t x) {
    if (reg.empty() || reg.size() > 63) {
        throw LayoutError("rotate: bad register width");
    }
    check_live(reg);
    require_distinct(reg);
    const std::size_t n = reg.size();
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t mask = dim - 1;
    x &= mask;
    // e^{2 pi i j x / N} with j = sum_i j_i 2^{n-1-i} factors into one phase per digit.
    for (std::size_t i = 0; i < n; i++) {
        std::uint64_t turns = (x * (std::uint64_t{1} << (n - 1 - i))) & mask;
        if (turns == 0) {
            continue;
        }
        double angle = 2.0 * kPi * static_cast<double>(turns) / static_cast<double>(dim);
        phase(reg[i], std::polar(1.0, angle));
    }
}

void FactoredState::phase(Qubit q, Complex ph) {
    StateFactor& f = factors_[factor_index(q)];
    auto pos = static_cast<std::size_t>(std::find(f.qubits.begin(), f.qubits.end(), q) - f.qubits.begin());
    const std::uint64_t bit = std::uint64_t{1} << (f.qubits.size() - 1 - pos);
    for (std::uint64_t i = 0; i < f.amplitudes.size(); i++) {
        if (i & bit) {
            f.amplitudes[i] *= ph;
        }
    }
}

void FactoredState::apply_pair_step(Qubit a, Qubit b, PairOp op) {
    if (a == b) {
        throw LayoutError("pair operation needs two distinct qubits");
    }
    const Qubit pair[2] = {a, b};
    transform(pair, [op](std::span<const Complex> in, std::span<Complex> out) {
        for (std::uint32_t s = 0; s < 4; s++) {
            std::uint32_t x = s >> 1, y = s & 1, t = 0;
            switch (op) {
                case PairOp::kDcnot:
                    t = (y << 1) | (x ^ y);
                    break;
                case PairOp::kDcnotInv:
                    t = ((x ^ y) << 1) | x;
                    break;
                case PairOp::kSwap:
                    t = (y << 1) | x;
                    break;
            }
            out[t] = in[s];
        }
    });
}

void FactoredState::pairwise(std::span<const Qubit> a, std::span<const Qubit> b, PairOp op) {
    if (a.size() != b.size()) {
        throw LayoutError("pairwise operation on registers of different widths");
    }
    std::vector<Qubit> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    check_live(all);
    require_distinct(all);
    for (std::size_t j = 0; j < a.size(); j++) {
        apply_pair_step(a[j], b[j], op);
    }
}

void FactoredState::qft(std::span<const Qubit> qubits, bool inverse) {
    if (qubits.empty() || qubits.size() > kMaxFactorQubits) {
        throw LayoutError("qft: bad register width");
    }
    const std::uint64_t dim = std::uint64_t{1} << qubits.size();
    const std::uint64_t mask = dim - 1;
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> table(dim);
    for (std::uint64_t m = 0; m < dim; m++) {
        table[m] = std::polar(scale, sign * 2.0 * kPi * static_cast<double>(m) / static_cast<double>(dim));
    }
    transform(qubits, [&table, mask](std::span<const Complex> in, std::span<Complex> out) {
        for (std::uint64_t k = 0; k < in.size(); k++) {
            Complex acc = 0;
            for (std::uint64_t j = 0; j < in.size(); j++) {
                acc += table[(j * k) & mask] * in[j];
            }
            out[k] = acc;
        }
    });
}

void FactoredState::apply_matrix(std::span<const Qubit> qubits, std::span<const Complex> matrix) {
    const std::size_t dim = std::size_t{1} << qubits.size();
    if (matrix.size() != dim * dim) {
        throw DimError("apply_matrix: expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    transform(qubits, [matrix, dim](std::span<const Complex> in, std::span<Complex> out) {
        for (std::size_t r = 0; r < dim; r++) {
            Complex acc = 0;
            for (std::size_t c = 0; c < dim; c++) {
                acc += matrix[r * dim + c] * in[c];
            }
            out[r] = acc;
        }
    });
}

std::vector<double> FactoredState::overlap_probabilities(std::span<const Qubit> qubits,
                                                         std::span<const Amplitudes> vectors) const {
    check_live(qubits);
    require_distinct(qubits);
    std::set<std::size_t> involved;
    for (Qubit q : qubits) {
        involved.insert(static_cast<std::size_t>(factor_of_[q]));
    }
    StateFactor scratch;
    const StateFactor* f = nullptr;
    if (involved.size() == 1) {
        f = &factors_[*involved.begin()];
    } else {
        auto it = involved.begin();
        scratch = factors_[*it];
        for (++it; it != involved.end(); ++it) {
            scratch = kron(scratch, factors_[*it]);
        }
        f = &scratch;
    }
    SubIndex sub = locate(*f, qubits);
    const std::size_t d = sub.offsets.size();
    std::vector<double> probs(vectors.size(), 0.0);
    for (std::size_t v = 0; v < vectors.size(); v++) {
        if (vectors[v].size() != d) {
            throw DimError("basis vector has dimension " + std::to_string(vectors[v].size()) + ", expected " +
                           std::to_string(d));
        }
    }
    for (std::uint64_t base = 0; base < f->amplitudes.size(); base++) {
        if (base & sub.mask) {
            continue;
        }
        for (std::size_t v = 0; v < vectors.size(); v++) {
            Complex acc = 0;
            const auto& vec = vectors[v];
            for (std::size_t s = 0; s < d; s++) {
                acc += std::conj(vec[s]) * f->amplitudes[base | sub.offsets[s]];
            }
            probs[v] += std::norm(acc);
        }
    }
    return probs;
}

double FactoredState::collapse_onto(std::span<const Qubit> qubits, const Amplitudes& v) {
    require_distinct(qubits);
    std::size_t index = merge(qubits);
    StateFactor& f = factors_[index];
    SubIndex sub = locate(f, qubits);
    const std::size_t d = sub.offsets.size();
    if (v.size() != d) {
        throw DimError("collapse_onto: vector dimension mismatch");
    }
    StateFactor rest;
    for (Qubit q : f.qubits) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
            rest.qubits.push_back(q);
        }
    }
    rest.amplitudes.reserve(std::size_t{1} << rest.qubits.size());
    double prob = 0;
    // Bases with the target bits cleared enumerate the remaining qubits in
    // factor order, which is the order kept in `rest`.
    for (std::uint64_t base = 0; base < f.amplitudes.size(); base++) {
        if (base & sub.mask) {
            continue;
        }
        Complex acc = 0;
        for (std::size_t s = 0; s < d; s++) {
            acc += std::conj(v[s]) * f.amplitudes[base | sub.offsets[s]];
        }
        rest.amplitudes.push_back(acc);
        prob += std::norm(acc);
    }
    if (prob <= 0.0) {
        throw InternalError("collapse onto an outcome of probability zero");
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& a : rest.amplitudes) {
        a *= scale;
    }
    StateFactor measured{{qubits.begin(), qubits.end()}, v};
    erase_factor(index);
    factors_.push_back(std::move(measured));
    if (!rest.qubits.empty()) {
        factors_.push_back(std::move(rest));
    }
    reindex(0);
    return prob;
}

double FactoredState::collapse_complement(std::span<const Qubit> qubits, std::span<const Amplitudes> vectors) {
    require_distinct(qubits);
    std::size_t index = merge(qubits);
    StateFactor& f = factors_[index];
    SubIndex sub = locate(f, qubits);
    const std::size_t d = sub.offsets.size();
    std::vector<Complex> in(d);
    for (std::uint64_t base = 0; base < f.amplitudes.size(); base++) {
        if (base & sub.mask) {
            continue;
        }
        for (std::size_t s = 0; s < d; s++) {
            in[s] = f.amplitudes[base | sub.offsets[s]];
        }
        for (const auto& vec : vectors) {
            Complex c = 0;
            for (std::size_t s = 0; s < d; s++) {
                c += std::conj(vec[s]) * in[s];
            }
            for (std::size_t s = 0; s < d; s++) {
                f.amplitudes[base | sub.offsets[s]] -= c * vec[s];
            }
        }
    }
    double prob = f.norm_squared();
    if (prob <= 0.0) {
        throw InternalError("collapse onto an empty complement");
    }
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& a : f.amplitudes) {
        a *= scale;
    }
    return prob;
}

double FactoredState::norm_squared() const {
    double total = 1.0;
    for (const auto& f : factors_) {
        total *= f.norm_squared();
    }
    return total;
}

DenseState FactoredState::to_dense() const {
    if (num_qubits() > kMaxFactorQubits) {
        throw CapacityError("dense view needs " + std::to_string(num_qubits()) + " qubits (cap " +
                            std::to_string(kMaxFactorQubits) + ")");
    }
    StateFactor all{{}, {Complex{1, 0}}};
    for (const auto& f : factors_) {
        all = kron(all, f);
    }
    DenseState out;
    out.qubits = all.qubits;
    std::sort(out.qubits.begin(), out.qubits.end());
    const std::size_t k = all.qubits.size();
    // bit position of each factor-order qubit in the sorted order
    std::vector<std::size_t> target_bit(k);
    for (std::size_t p = 0; p < k; p++) {
        auto sorted_pos = static_cast<std::size_t>(std::lower_bound(out.qubits.begin(), out.qubits.end(), all.qubits[p]) -
                                                   out.qubits.begin());
        target_bit[p] = k - 1 - sorted_pos;
    }
    out.amplitudes.assign(all.amplitudes.size(), Complex{0, 0});
    for (std::uint64_t i = 0; i < all.amplitudes.size(); i++) {
        std::uint64_t j = 0;
        for (std::size_t p = 0; p < k; p++) {
            if ((i >> (k - 1 - p)) & 1) {
                j |= std::uint64_t{1} << target_bit[p];
            }
        }
        out.amplitudes[j] = all.amplitudes[i];
    }
    return out;
}

void FactoredState::dump(std::ostream& out) const {
    DenseState dense = to_dense();
    const std::size_t k = dense.qubits.size();
    char buf[96];
    for (std::uint64_t i = 0; i < dense.amplitudes.size(); i++) {
        std::string bits(k, '0');
        for (std::size_t p = 0; p < k; p++) {
            if ((i >> (k - 1 - p)) & 1) {
                bits[p] = '1';
            }
        }
        std::snprintf(buf, sizeof buf, "\t%.17g\t%.17g\n", dense.amplitudes[i].real(), dense.amplitudes[i].imag());
        out << bits << buf;
    }
}

}  // namespace qsdc
