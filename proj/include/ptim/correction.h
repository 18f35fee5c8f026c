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

#ifndef PTIM_CORRECTION_H
#define PTIM_CORRECTION_H

#include <cstdint>
#include <optional>
#include <vector>

#include "ptim/pauli.h"
#include "ptim/record.h"
#include "ptim/rng.h"
#include "ptim/syndrome.h"

namespace ptim {

/// Hypothetical measurements added to an observed record so that its
/// outcomes become self-consistent.
struct AugmentedPattern {
    std::vector<SlotRef> added_e;
    std::vector<SlotRef> added_s;
    int num_defects = 0;
    int64_t matching_weight = 0;
};

/// Primal matching: inserts E measurements (consumes S outcomes).
AugmentedPattern augment_E(const MeasurementRecord &record);
/// Dual matching: inserts S measurements (consumes E outcomes).
AugmentedPattern augment_S(const MeasurementRecord &record, DualParityMode mode);
/// kPlusParity for the half-chain protocol, kMinusParityOrAncilla otherwise.
DualParityMode default_dual_mode(const MeasurementRecord &record);

struct CorrectionPattern {
    /// c_i for every system qubit.
    std::vector<uint8_t> bits;
    bool predicted_survival = false;
    /// True when the failure branch picked between C1 and its complement.
    bool random_choice = false;
    int contradictions = 0;
};

/// Decoder for the decoding protocol. `rng` is consumed only in the
/// failure branch (one draw).
CorrectionPattern decode(const MeasurementRecord &record, Rng &rng);

/// (-1)^{m*} (-1)^{c_0} z_0.
int decoding_correlation(int encoded_bit, const CorrectionPattern &c, int z_readout);

enum class PredictionForm : uint8_t { kEntangled, kProduct, kPartialMixed };

/// Predicted state of the pair (ancilla, last system qubit); local qubit 0
/// is the ancilla.
struct StatePrediction {
    PredictionForm form = PredictionForm::kPartialMixed;
    int sign_zz = +1;
    int sign_xa = +1;
    int sign_xx = +1;

    static StatePrediction entangled(int sign_zz, int sign_xx) { return {PredictionForm::kEntangled, sign_zz, +1, sign_xx}; }
    static StatePrediction product(int sign_xa, int sign_xx) { return {PredictionForm::kProduct, +1, sign_xa, sign_xx}; }
    static StatePrediction partial_mixed(int sign_xx) { return {PredictionForm::kPartialMixed, +1, +1, sign_xx}; }

    /// Independent stabilizer generators on the two local qubits.
    std::vector<PauliString> generators() const;
    /// Generators of the ancilla marginal (partial trace over local qubit 1).
    std::vector<PauliString> ancilla_generators() const;
    MatrixXc to_density_matrix() const;
    MatrixXc ancilla_density_matrix() const;

    bool operator==(const StatePrediction &) const = default;
};

struct PredictionDiagnostics {
    int contradictions = 0;
    /// A monotone recorded-E path across the chain was found.
    bool path_found = false;
    /// Its parity disagreed with the tracked cluster sign.
    bool path_mismatch = false;
    /// Augmentations used (empty for the naive predictor).
    AugmentedPattern augmentation;
};

/// Error-corrected prediction for an ancilla or shadow record.
StatePrediction predict_state(const MeasurementRecord &record, PredictionDiagnostics *diag = nullptr);
/// Baseline without error correction.
StatePrediction predict_state_naive(const MeasurementRecord &record, PredictionDiagnostics *diag = nullptr);

/// X-parity of the earliest monotone left-to-right path of recorded E
/// events not cut by any recorded or added S, or nullopt if none exists.
std::optional<int> recorded_path_parity(const MeasurementRecord &record, const std::vector<SlotRef> &added_s);

/// Pure-state density matrix for generators on n qubits (n = number of
/// generators' support width: 1 or 2), normalized: prod (I + g) / 2^n.
MatrixXc stabilizer_density_matrix(const std::vector<PauliString> &generators, int num_qubits);

}  // namespace ptim

#endif
