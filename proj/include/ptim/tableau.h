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

#ifndef PTIM_TABLEAU_H
#define PTIM_TABLEAU_H

#include <optional>
#include <span>
#include <vector>

#include "ptim/pauli.h"
#include "ptim/state_spec.h"

namespace ptim {

/// Reduced density matrix of one or two qubits (dimension 2 or 4).
using DensityMatrix = MatrixXc;

/// Stabilizer tableau with destabilizers, for small qubit counts. Used as an
/// exact reference for the cluster simulator.
class Tableau {
   public:
    static constexpr int kMaxQubits = 32;

    /// |0...0> on n qubits.
    explicit Tableau(int num_qubits);
    /// Stabilizer state of the given initial state (ancilla is qubit L).
    explicit Tableau(const InitialStateSpec &spec);

    int num_qubits() const { return n_; }
    const std::vector<PauliString> &stabilizers() const { return stab_; }
    const std::vector<PauliString> &destabilizers() const { return destab_; }

    void h(int q);
    void cnot(int control, int target);
    void x(int q);
    void z(int q);

    /// Projective measurement of the Hermitian Pauli `p` (sign included).
    MeasurementResult measure(const PauliString &p, OutcomeSource source);
    MeasurementResult measure_e(int site, OutcomeSource source) { return measure(PauliString::x(site), source); }
    MeasurementResult measure_s(int edge, OutcomeSource source) {
        return measure(PauliString::zz(edge, edge + 1), source);
    }

    /// +1/-1 if +/-p is in the stabilizer group, nullopt if its outcome is random.
    std::optional<int> expectation(const PauliString &p) const;

    /// rank(stabilizers restricted to A) - |A|, in bits.
    int entanglement_entropy(std::span<const int> subsystem) const;

    /// Exact rho_A for |A| in {1, 2}; A[0] is the leftmost tensor factor.
    DensityMatrix reduced_density_matrix(std::span<const int> subsystem) const;

   private:
    void check_qubit(int q) const;

    int n_;
    std::vector<PauliString> stab_;
    std::vector<PauliString> destab_;
};

}  // namespace ptim

#endif
