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

#ifndef QSDC_QCORE_LAYOUT_H
#define QSDC_QCORE_LAYOUT_H

#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsdc/qcore/types.h"

namespace qsdc {

/// Named quNit registers, each an ordered array of global qubits.
///
/// The first qubit of a register is the most significant binary digit of the
/// register value, so a register of n qubits holds values 0..2^n-1.
class RegisterLayout {
   public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<std::pair<std::string, std::vector<Qubit>>> regs);

    /// Throws LayoutError if the name exists, the list is empty or has
    /// duplicates, or any qubit already belongs to another register.
    void add(std::string name, std::vector<Qubit> qubits);

    bool contains(std::string_view name) const;
    const std::vector<Qubit>& qubits(std::string_view name) const;
    std::size_t width(std::string_view name) const { return qubits(name).size(); }
    std::uint64_t dim(std::string_view name) const { return std::uint64_t{1} << width(name); }

    /// Qubits of the named registers concatenated in the given order.
    std::vector<Qubit> concat(std::span<const std::string> names) const;

    const std::map<std::string, std::vector<Qubit>, std::less<>>& registers() const { return registers_; }

    /// Largest qubit index mentioned, plus one (0 when empty).
    Qubit extent() const;

   private:
    std::map<std::string, std::vector<Qubit>, std::less<>> registers_;
};

}  // namespace qsdc

#endif  // QSDC_QCORE_LAYOUT_H
