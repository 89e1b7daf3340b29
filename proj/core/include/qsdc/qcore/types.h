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

#ifndef QSDC_QCORE_TYPES_H
#define QSDC_QCORE_TYPES_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace qsdc {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Global qubit index. Indices are handed out monotonically and never reused.
using Qubit = std::uint32_t;

inline constexpr double kPi = 3.14159265358979323846;

/// Tolerance for normalization and orthonormality checks.
inline constexpr double kNormTolerance = 1e-9;

/// Largest number of qubits a single merged factor may hold.
inline constexpr std::size_t kMaxFactorQubits = 24;

/// The four states of the mutually unbiased set {|0>, |1>, |+>, |->}.
enum class PureQubit { kZero, kOne, kPlus, kMinus };

enum class MeasureBasis { kZ, kX };

/// Two-register (or two-qubit) operations that act bitwise on pairs.
///   kDcnot:    |x>|y> -> |y>|x^y>
///   kDcnotInv: |x>|y> -> |x^y>|x>
///   kSwap:     |x>|y> -> |y>|x>
enum class PairOp { kDcnot, kDcnotInv, kSwap };

inline MeasureBasis basis_of(PureQubit s) {
    return (s == PureQubit::kZero || s == PureQubit::kOne) ? MeasureBasis::kZ : MeasureBasis::kX;
}

/// Outcome bit that a perfect measurement of `s` in its own basis yields.
inline int bit_of(PureQubit s) { return (s == PureQubit::kOne || s == PureQubit::kMinus) ? 1 : 0; }

inline PureQubit pure_from(MeasureBasis basis, int bit) {
    if (basis == MeasureBasis::kZ) {
        return bit ? PureQubit::kOne : PureQubit::kZero;
    }
    return bit ? PureQubit::kMinus : PureQubit::kPlus;
}

Amplitudes amplitudes_of(PureQubit s);

std::string_view to_string(PureQubit s);
std::string_view to_string(MeasureBasis b);
std::string_view to_string(PairOp op);

}  // namespace qsdc

#endif  // QSDC_QCORE_TYPES_H
