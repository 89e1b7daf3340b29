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

#ifndef QSDC_CHANNELS_CHANNELS_H
#define QSDC_CHANNELS_CHANNELS_H

#include <cstdint>
#include <span>
#include <string_view>

#include "qsdc/qcore/measure.h"
#include "qsdc/qcore/state.h"

namespace qsdc::channels {

/// Entanglement families. Bell channels pair an n-qubit sender register
/// with an n-qubit receiver register; W and GHZ channels pack the two
/// receiver subsystems into one 2n-qubit register (first n qubits first).
enum class Family { kBell, kW, kGhz };

/// QFT2 is the two-quNit Fourier transform and cannot be undone one qubit
/// pair at a time; the others can.
enum class Locking { kDcnot, kQft2, kSwap };

std::string_view to_string(Family f);
std::string_view to_string(Locking l);
/// Accepts "bell", "w", "ghz". ConfigError otherwise.
Family parse_family(std::string_view s);
/// Accepts "dcnot", "qft" (or "qft2"), "swap". ConfigError otherwise.
Locking parse_locking(std::string_view s);

inline bool pairwise_decomposable(Locking l) { return l != Locking::kQft2; }

/// Qubits per quNit for N = 2^n. DimError unless N is a power of two >= 2.
std::size_t qubits_per_qunit(std::uint32_t N);

inline std::size_t receiver_width(Family f, std::size_t n) { return f == Family::kBell ? n : 2 * n; }

/// (1/sqrt N) sum_j e^{2 pi i j x / N} |j+y>|j>.
Amplitudes bell_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y);
/// U(xy) applied to the sender of
/// (1/sqrt N)[(1/sqrt 2) sum_{j>=1} |j-1>(|0 j> + |j 0>) + |N-1>|00>],
/// with U(xy)|j> = e^{2 pi i (j-y) x / N} |j-y>.
Amplitudes w_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y);
/// (1/sqrt N) sum_j e^{2 pi i j x / N} |j+y>|j j>.
Amplitudes ghz_vector(std::uint32_t N, std::uint32_t x, std::uint32_t y);
Amplitudes family_vector(Family f, std::uint32_t N, EncodedSymbols sym);

/// Bell and GHZ: rotation by x, then shift by y. W: U(xy).
void encode(FactoredState& state, Family f, std::span<const Qubit> sender, EncodedSymbols sym);
void encode(FactoredState& state, Family f, std::string_view sender_reg, EncodedSymbols sym);
/// Adjoint of encode.
void encode_inverse(FactoredState& state, Family f, std::span<const Qubit> sender, EncodedSymbols sym);

/// All N^2 labelled family vectors, x-major. Complete only for Bell.
DecodingBasis decoding_basis(Family f, std::uint32_t N);

/// Installs the (0,0) family vector on sender + receiver as one factor.
void prepare_channel(FactoredState& state, Family f, std::span<const Qubit> sender, std::span<const Qubit> receiver);
void prepare_channel(FactoredState& state, Family f, std::string_view sender_reg, std::string_view receiver_reg);

/// Locks quNits a and b (a most significant for QFT2).
void lock(FactoredState& state, Locking l, std::span<const Qubit> a, std::span<const Qubit> b);
void unlock(FactoredState& state, Locking l, std::span<const Qubit> a, std::span<const Qubit> b);

/// Pair-level operations for step-wise unlocking of pairwise-decomposable locks.
PairOp lock_step(Locking l);
PairOp unlock_step(Locking l);

}  // namespace qsdc::channels

#endif  // QSDC_CHANNELS_CHANNELS_H
