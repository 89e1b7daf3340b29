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

#include "qsdc/qcore/layout.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qsdc/qcore/errors.h"

namespace qsdc {

Amplitudes amplitudes_of(PureQubit s) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (s) {
        case PureQubit::kZero:
            return {1.0, 0.0};
        case PureQubit::kOne:
            return {0.0, 1.0};
        case PureQubit::kPlus:
            return {h, h};
        case PureQubit::kMinus:
            return {h, -h};
    }
    return {};
}

std::string_view to_string(PureQubit s) {
    switch (s) {
        case PureQubit::kZero:
            return "0";
        case PureQubit::kOne:
            return "1";
        case PureQubit::kPlus:
            return "+";
        case PureQubit::kMinus:
            return "-";
    }
    return "?";
}

std::string_view to_string(MeasureBasis b) { return b == MeasureBasis::kZ ? "Z" : "X"; }

std::string_view to_string(PairOp op) {
    switch (op) {
        case PairOp::kDcnot:
            return "DCNOT";
        case PairOp::kDcnotInv:
            return "DCNOT_INV";
        case PairOp::kSwap:
            return "SWAP";
    }
    return "?";
}

RegisterLayout::RegisterLayout(std::initializer_list<std::pair<std::string, std::vector<Qubit>>> regs) {
    for (const auto& [name, qubits] : regs) {
        add(name, qubits);
    }
}

void RegisterLayout::add(std::string name, std::vector<Qubit> qubits) {
    if (registers_.contains(name)) {
        throw LayoutError("register '" + name + "' already defined");
    }
    if (qubits.empty()) {
        throw LayoutError("register '" + name + "' is empty");
    }
    std::set<Qubit> seen(qubits.begin(), qubits.end());
    if (seen.size() != qubits.size()) {
        throw LayoutError("register '" + name + "' lists a qubit twice");
    }
    for (const auto& [other, other_qubits] : registers_) {
        for (Qubit q : other_qubits) {
            if (seen.contains(q)) {
                throw LayoutError("register '" + name + "' overlaps register '" + other + "' at qubit " +
                                  std::to_string(q));
            }
        }
    }
    registers_.emplace(std::move(name), std::move(qubits));
}

bool RegisterLayout::contains(std::string_view name) const { return registers_.find(name) != registers_.end(); }

const std::vector<Qubit>& RegisterLayout::qubits(std::string_view name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) {
        throw LayoutError("unknown register '" + std::string(name) + "'");
    }
    return it->second;
}

std::vector<Qubit> RegisterLayout::concat(std::span<const std::string> names) const {
    std::vector<Qubit> out;
    for (const auto& name : names) {
        const auto& q = qubits(name);
        out.insert(out.end(), q.begin(), q.end());
    }
    return out;
}

Qubit RegisterLayout::extent() const {
    Qubit e = 0;
    for (const auto& [_, qubits] : registers_) {
        for (Qubit q : qubits) {
            e = std::max(e, q + 1);
        }
    }
    return e;
}

}  // namespace qsdc
