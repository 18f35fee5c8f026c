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

#ifndef PTIM_CLUSTER_STATE_H
#define PTIM_CLUSTER_STATE_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ptim/pauli.h"
#include "ptim/state_spec.h"

namespace ptim {

enum class ClusterKind : uint8_t { kBell, kZDefinite };

struct SurvivalInfo {
    bool survived = false;
    /// Tracked representative configuration of every qubit (ancilla last).
    std::vector<uint8_t> bits;
    /// Sign of the designated cluster, or +1 when there is none.
    int sign = +1;
};

/// Pure state of two qubits given by two commuting generators acting on
/// local indices 0 and 1.
struct PairState {
    std::array<PauliString, 2> generators;
};

/// Extended colored-cluster representation of a PTIM state.
///
/// The state is a product of Bell clusters |m> +/- |m̄> over the qubits
/// sharing a color, together with (for computational-basis inits)
/// Z-definite qubits. Each qubit carries a representative bit; for a Bell
/// cluster only bit differences are physical.
class ClusterState {
   public:
    explicit ClusterState(const InitialStateSpec &spec);

    MeasurementResult apply(Measurement m, OutcomeSource source);
    MeasurementResult measure_e(int site, OutcomeSource source);
    MeasurementResult measure_s(int edge, OutcomeSource source);
    /// Computational-basis readout of one qubit.
    MeasurementResult measure_z(int site, OutcomeSource source);

    /// Number of Bell clusters of size >= 2 cut by the subsystem, in bits.
    int entanglement_entropy(std::span<const int> subsystem) const;

    SurvivalInfo survival_and_config() const;
    bool survived() const;

    /// Stabilizer generators of qubits {q0, q1}; their clusters must be
    /// contained in the pair.
    PairState pair_state(int q0, int q1) const;

    const InitialStateSpec &spec() const { return spec_; }
    int num_qubits() const { return static_cast<int>(color_.size()); }
    int num_system_qubits() const { return spec_.num_system_qubits; }

    int color_of(int qubit) const { return color_[qubit]; }
    ClusterKind kind_of(int color) const { return kind_[color]; }
    int sign_of(int color) const { return sign_[color]; }
    const std::vector<int> &members(int color) const { return members_[color]; }
    uint8_t bit(int qubit) const { return bit_[qubit]; }
    std::optional<int> designated_color() const;

    /// Product of the signs of all Bell clusters.
    int sign_product() const;

   private:
    int allocate_color(ClusterKind kind, int sign);
    void release_color(int color);
    void detach(int qubit);
    void attach(int qubit, int color);
    void merge_into(int loser, int winner, bool invert_loser);
    void collapse_to_z(int color, bool invert);
    void check_site(int site) const;

    InitialStateSpec spec_;
    std::vector<int> color_;
    std::vector<int> position_;
    std::vector<uint8_t> bit_;
    std::vector<std::vector<int>> members_;
    std::vector<ClusterKind> kind_;
    std::vector<int8_t> sign_;
    std::vector<int> free_colors_;
    int designated_ = -1;
};

}  // namespace ptim

#endif
