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

#include "ptim/pauli.h"

#include <stdexcept>

namespace ptim {

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::kX:
            return 'X';
        case Axis::kY:
            return 'Y';
        case Axis::kZ:
            return 'Z';
    }
    return '?';
}

PauliString PauliString::single(int qubit, Axis axis, int sign) {
    uint64_t bit = uint64_t{1} << qubit;
    PauliString p;
    p.sign = sign;
    if (axis != Axis::kZ) {
        p.xs = bit;
    }
    if (axis != Axis::kX) {
        p.zs = bit;
    }
    return p;
}

PauliString PauliString::zz(int a, int b, int sign) {
    return {0, (uint64_t{1} << a) | (uint64_t{1} << b), sign};
}

PauliString PauliString::xx(int a, int b, int sign) {
    return {(uint64_t{1} << a) | (uint64_t{1} << b), 0, sign};
}

std::string PauliString::str(int n) const {
    std::string out(1, sign > 0 ? '+' : '-');
    for (int q = 0; q < n; ++q) {
        bool x = (xs >> q) & 1;
        bool z = (zs >> q) & 1;
        out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : '_');
    }
    return out;
}

PauliString multiply(const PauliString &a, const PauliString &b, int *imag_phase) {
    // a = sa i^{|xa za|} X^xa Z^za; moving Z^za past X^xb costs (-1)^{|za xb|}.
    PauliString r{a.xs ^ b.xs, a.zs ^ b.zs, a.sign * b.sign};
    int k = std::popcount(a.xs & a.zs) + std::popcount(b.xs & b.zs) + 2 * std::popcount(a.zs & b.xs) -
            std::popcount(r.xs & r.zs);
    k = ((k % 4) + 4) % 4;
    if (k >= 2) {
        r.sign = -r.sign;
        k -= 2;
    }
    if (imag_phase != nullptr) {
        *imag_phase = k;
    }
    return r;
}

Matrix2c pauli_matrix(Axis axis) {
    using C = std::complex<double>;
    Matrix2c m;
    switch (axis) {
        case Axis::kX:
            m << 0, 1, 1, 0;
            break;
        case Axis::kY:
            m << 0, C(0, -1), C(0, 1), 0;
            break;
        case Axis::kZ:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

MatrixXc pauli_string_matrix(const PauliString &p, int n) {
    if (n < 1 || n > 2) {
        throw std::invalid_argument("pauli_string_matrix supports 1 or 2 qubits");
    }
    MatrixXc out = MatrixXc::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        bool x = (p.xs >> q) & 1;
        bool z = (p.zs >> q) & 1;
        Matrix2c f = Matrix2c::Identity();
        if (x && z) {
            f = pauli_matrix(Axis::kY);
        } else if (x) {
            f = pauli_matrix(Axis::kX);
        } else if (z) {
            f = pauli_matrix(Axis::kZ);
        }
        MatrixXc next(out.rows() * 2, out.cols() * 2);
        for (int r = 0; r < out.rows(); ++r) {
            for (int c = 0; c < out.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
            }
        }
        out = next;
    }
    return static_cast<double>(p.sign) * out;
}

}  // namespace ptim
