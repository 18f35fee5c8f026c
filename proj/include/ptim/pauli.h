// Copyright 2026 The ptim-bounds Authors
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

#ifndef PTIM_PAULI_H
#define PTIM_PAULI_H

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <string>

namespace ptim {

enum class Axis : uint8_t { kX = 0, kY = 1, kZ = 2 };

char axis_name(Axis axis);

/// Hermitian Pauli string on up to 64 qubits, sign * i^{|x&z|} X^x Z^z.
/// A qubit with both bits set carries Y.
struct PauliString {
    uint64_t xs = 0;
    uint64_t zs = 0;
    int sign = +1;

    static PauliString single(int qubit, Axis axis, int sign = +1);
    static PauliString x(int qubit, int sign = +1) { return single(qubit, Axis::kX, sign); }
    static PauliString z(int qubit, int sign = +1) { return single(qubit, Axis::kZ, sign); }
    static PauliString zz(int a, int b, int sign = +1);
    static PauliString xx(int a, int b, int sign = +1);

    bool commutes(const PauliString &other) const {
        return (std::popcount((xs & other.zs) ^ (zs & other.xs)) & 1) == 0;
    }
    bool is_identity() const { return xs == 0 && zs == 0; }
    bool same_support_and_type(const PauliString &other) const {
        return xs == other.xs && zs == other.zs;
    }
    /// Restricted to `mask` (other qubits become identity); sign kept.
    PauliString restricted(uint64_t mask) const { return {xs & mask, zs & mask, sign}; }

    /// e.g. "+XZ_" for the first `n` qubits.
    std::string str(int n) const;

    bool operator==(const PauliString &) const = default;
};

/// Product a*b of two Pauli strings. Returns the phase exponent k such that
/// a*b = i^k * (result as Hermitian string with result.sign = +1 folded in).
/// For commuting inputs k is 0 and the sign lives in `result.sign`.
PauliString multiply(const PauliString &a, const PauliString &b, int *imag_phase = nullptr);

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

/// Single-qubit Pauli matrix.
Matrix2c pauli_matrix(Axis axis);

/// Dense matrix of a Pauli string on `n` (1 or 2) qubits; qubit 0 is the
/// leftmost tensor factor. Sign included.
MatrixXc pauli_string_matrix(const PauliString &p, int n);

}  // namespace ptim

#endif
