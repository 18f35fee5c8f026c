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

#ifndef PTIM_SHADOW_H
#define PTIM_SHADOW_H

#include <vector>

#include "ptim/correction.h"
#include "ptim/pauli.h"

namespace ptim {

/// (3/2)(I + o O) - I.
Matrix2c make_shadow(Axis basis, int outcome);
/// Tensor product of the two single-qubit shadows; qubit 0 leftmost.
Matrix4c make_pair_shadow(Axis basis0, int outcome0, Axis basis1, int outcome1);

/// (1 - eps) rho + eps I / d. Throws for eps outside (0, 1].
MatrixXc regularize(const MatrixXc &rho, double epsilon);

/// -Tr[rho_S log2 rho_C] by Hermitian eigendecomposition of rho_C. Throws if
/// rho_C is not full rank.
double shadow_entropy(const MatrixXc &rho_shadow, const MatrixXc &rho_prediction);

/// Measured product-basis data of one shadow sample, local qubit q first.
struct ShadowOutcome {
    std::vector<Axis> bases;
    std::vector<int> outcomes;
};

/// Tr[rho_S P] for a Pauli string P on the measured qubits.
double shadow_pauli_trace(const ShadowOutcome &shadow, const PauliString &p);

/// Closed form of shadow_entropy for a stabilizer prediction with the given
/// independent generators on `shadow.bases.size()` qubits, regularized with
/// strength eps.
double shadow_entropy_stabilizer(const ShadowOutcome &shadow, const std::vector<PauliString> &generators,
                                 double epsilon);

/// Strictly increasing grid in (0, 1] ending at 1.
struct EpsilonGrid {
    std::vector<double> values;

    /// `count` log-spaced values from `lo` to 1.
    static EpsilonGrid log_spaced(double lo = 1e-3, int count = 13);
    void validate() const;
};

/// Per-sample entropy shadows for each eps: the single-qubit upper-bound
/// term and the two-qubit term.
struct SampleShadowEntropies {
    std::vector<double> single;
    std::vector<double> pair;
};

SampleShadowEntropies sample_shadow_entropies(const ShadowOutcome &pair_shadow, const StatePrediction &prediction,
                                              const EpsilonGrid &grid);

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
    long n = 0;
};

/// Mean and standard error (sample standard deviation / sqrt(N)).
MeanSE mean_se(const std::vector<double> &values);

struct BoundCurves {
    std::vector<double> epsilon;
    /// Per eps: upper bound S^SC_{a} and lower bound S^SC_{a} - S^SC_{a,L}.
    std::vector<MeanSE> upper;
    std::vector<MeanSE> lower;
    /// Min over eps of the upper means, max over eps of the lower means.
    MeanSE upper_envelope;
    MeanSE lower_envelope;
    int upper_argmin = 0;
    int lower_argmax = 0;
};

/// Sample averages of the entropy shadows; errors if `samples` is empty.
BoundCurves bound_curves(const std::vector<ShadowOutcome> &shadows, const std::vector<StatePrediction> &predictions,
                         const EpsilonGrid &grid);

/// Envelope helpers on already-aggregated per-eps curves.
MeanSE min_over(const std::vector<MeanSE> &curves, int *argmin = nullptr);
MeanSE max_over(const std::vector<MeanSE> &curves, int *argmax = nullptr);

}  // namespace ptim

#endif
