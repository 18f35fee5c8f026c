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

#include "ptim/tableau.h"

#include <bit>
#include <stdexcept>
#include <string>

namespace ptim {

namespace {

void h_row(PauliString &r, uint64_t bit) {
    bool x = r.xs & bit;
    bool z = r.zs & bit;
    if (x && z) {
        r.sign = -r.sign;
    }
    r.xs = (r.xs & ~bit) | (z ? bit : 0);
    r.zs = (r.zs & ~bit) | (x ? bit : 0);
}

void cnot_row(PauliString &r, uint64_t cb, uint64_t tb) {
    bool xc = r.xs & cb;
    bool zc = r.zs & cb;
    bool xt = r.xs & tb;
    bool zt = r.zs & tb;
    if (xc && zt && (xt == zc)) {
        r.sign = -r.sign;
    }
    if (xc) {
        r.xs ^= tb;
    }
    if (zt) {
        r.zs ^= cb;
    }
}

}  // namespace

Tableau::Tableau(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("tableau supports 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    for (int q = 0; q < n_; ++q) {
        stab_.push_back(PauliString::z(q));
        destab_.push_back(PauliString::x(q));
    }
}

Tableau::Tableau(const InitialStateSpec &spec) : Tableau(spec.num_qubits()) {
    spec.validate();
    if (spec.kind == InitKind::kGhz) {
        h(0);
        for (int q = 1; q < n_; ++q) {
            cnot(0, q);
        }
        if (spec.ghz_parity < 0) {
            z(0);
        }
    } else {
        for (int q = 0; q < n_; ++q) {
            if (spec.classical_bits[q]) {
                x(q);
            }
        }
    }
}

void Tableau::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
}

void Tableau::h(int q) {
    check_qubit(q);
    uint64_t b = uint64_t{1} << q;
    for (auto &r : stab_) h_row(r, b);
    for (auto &r : destab_) h_row(r, b);
}

void Tableau::cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    uint64_t cb = uint64_t{1} << control;
    uint64_t tb = uint64_t{1} << target;
    for (auto &r : stab_) cnot_row(r, cb, tb);
    for (auto &r : destab_) cnot_row(r, cb, tb);
}

void Tableau::x(int q) {
    check_qubit(q);
    uint64_t b = uint64_t{1} << q;
    for (auto &r : stab_) {
        if (r.zs & b) r.sign = -r.sign;
    }
}

void Tableau::z(int q) {
    check_qubit(q);
    uint64_t b = uint64_t{1} << q;
    for (auto &r : stab_) {
        if (r.xs & b) r.sign = -r.sign;
    }
}

std::optional<int> Tableau::expectation(const PauliString &p) const {
    for (const auto &s : stab_) {
        if (!s.commutes(p)) {
            return std::nullopt;
        }
    }
    PauliString acc;
    for (int k = 0; k < n_; ++k) {
        if (!destab_[k].commutes(p)) {
            acc = multiply(acc, stab_[k]);
        }
    }
    if (!acc.same_support_and_type(p)) {
        throw std::logic_error("tableau invariant violated: commuting Pauli not in stabilizer group");
    }
    return acc.sign * p.sign;
}

MeasurementResult Tableau::measure(const PauliString &p, OutcomeSource source) {
    int pivot = -1;
    for (int k = 0; k < n_; ++k) {
        if (!stab_[k].commutes(p)) {
            pivot = k;
            break;
        }
    }
    if (pivot < 0) {
        return {source.check_deterministic(*expectation(p)), true};
    }
    int outcome = source.draw_random();
    for (int k = 0; k < n_; ++k) {
        if (k != pivot && !stab_[k].commutes(p)) {
            stab_[k] = multiply(stab_[k], stab_[pivot]);
        }
        if (k != pivot && !destab_[k].commutes(p)) {
            destab_[k] = multiply(destab_[k], stab_[pivot]);
        }
    }
    destab_[pivot] = stab_[pivot];
    stab_[pivot] = PauliString{p.xs, p.zs, p.sign * outcome};
    return {outcome, false};
}

int Tableau::entanglement_entropy(std::span<const int> subsystem) const {
    uint64_t mask = 0;
    for (int q : subsystem) {
        check_qubit(q);
        mask |= uint64_t{1} << q;
    }
    if (mask == 0) {
        throw std::invalid_argument("subsystem must be non-empty");
    }
    // Pack restricted x bits low and z bits high; n <= 32 fits one word.
    std::vector<uint64_t> rows;
    for (const auto &s : stab_) {
        rows.push_back((s.xs & mask) | ((s.zs & mask) << 32));
    }
    int rank = 0;
    for (int bit = 0; bit < 64 && rank < static_cast<int>(rows.size()); ++bit) {
        uint64_t b = uint64_t{1} << bit;
        int sel = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r] & b) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && (rows[r] & b)) {
                rows[r] ^= rows[rank];
            }
        }
        ++rank;
    }
    return rank - std::popcount(mask);
}

DensityMatrix Tableau::reduced_density_matrix(std::span<const int> subsystem) const {
    int k = static_cast<int>(subsystem.size());
    if (k < 1 || k > 2) {
        throw std::invalid_argument("reduced_density_matrix supports |A| in {1, 2}");
    }
    for (int q : subsystem) check_qubit(q);
    if (k == 2 && subsystem[0] == subsystem[1]) {
        throw std::invalid_argument("subsystem qubits must be distinct");
    }
    int dim = 1 << k;
    DensityMatrix rho = DensityMatrix::Zero(dim, dim);
    // Enumerate all Paulis on A; local index j maps to subsystem[j].
    for (int code = 0; code < (1 << (2 * k)); ++code) {
        PauliString global;
        PauliString local;
        for (int j = 0; j < k; ++j) {
            int sym = (code >> (2 * j)) & 3;  // 0=I 1=X 2=Y 3=Z
            if (sym == 0) continue;
            Axis a = sym == 1 ? Axis::kX : (sym == 2 ? Axis::kY : Axis::kZ);
            auto g = PauliString::single(subsystem[j], a);
            auto l = PauliString::single(j, a);
            global.xs |= g.xs;
            global.zs |= g.zs;
            local.xs |= l.xs;
            local.zs |= l.zs;
        }
        auto e = global.is_identity() ? std::optional<int>(1) : expectation(global);
        if (e) {
            local.sign = *e;
            rho += pauli_string_matrix(local, k);
        }
    }
    return rho / static_cast<double>(dim);
}

}  // namespace ptim
