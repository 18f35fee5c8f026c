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

#include "ptim/shadow.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace ptim {

Matrix2c make_shadow(Axis basis, int outcome) {
    return 1.5 * (Matrix2c::Identity() + static_cast<double>(outcome) * pauli_matrix(basis)) - Matrix2c::Identity();
}

Matrix4c make_pair_shadow(Axis basis0, int outcome0, Axis basis1, int outcome1) {
    Matrix2c a = make_shadow(basis0, outcome0);
    Matrix2c b = make_shadow(basis1, outcome1);
    Matrix4c out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

MatrixXc regularize(const MatrixXc &rho, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    auto d = rho.rows();
    return (1.0 - epsilon) * rho + (epsilon / static_cast<double>(d)) * MatrixXc::Identity(d, d);
}

double shadow_entropy(const MatrixXc &rho_shadow, const MatrixXc &rho_prediction) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(rho_prediction);
    const auto &vals = solver.eigenvalues();
    if (vals.minCoeff() <= 1e-14) {
        throw std::invalid_argument("prediction is not full rank; regularize it first");
    }
    Eigen::VectorXd logs = vals.unaryExpr([](double v) { return std::log2(v); });
    MatrixXc log_rho = solver.eigenvectors() * logs.cast<std::complex<double>>().asDiagonal() *
                       solver.eigenvectors().adjoint();
    return -(rho_shadow * log_rho).trace().real();
}

double shadow_pauli_trace(const ShadowOutcome &shadow, const PauliString &p) {
    double value = p.sign;
    for (size_t q = 0; q < shadow.bases.size(); ++q) {
        bool x = (p.xs >> q) & 1;
        bool z = (p.zs >> q) & 1;
        if (!x && !z) {
            continue;
        }
        Axis axis = x && z ? Axis::kY : (x ? Axis::kX : Axis::kZ);
        if (axis != shadow.bases[q]) {
            return 0.0;
        }
        value *= 3.0 * shadow.outcomes[q];
    }
    return value;
}

double shadow_entropy_stabilizer(const ShadowOutcome &shadow, const std::vector<PauliString> &generators,
                                 double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    int n = static_cast<int>(shadow.bases.size());
    int k = static_cast<int>(generators.size());
    double dim = std::ldexp(1.0, n);
    double lambda_high = (1.0 - epsilon) / std::ldexp(1.0, n - k) + epsilon / dim;
    double lambda_low = epsilon / dim;
    // Tr[rho_S P] with P the projector onto the joint +1 eigenspace.
    double projector_trace = 0.0;
    for (int mask = 0; mask < (1 << k); ++mask) {
        PauliString element;
        for (int j = 0; j < k; ++j) {
            if (mask & (1 << j)) {
                element = multiply(element, generators[j]);
            }
        }
        projector_trace += shadow_pauli_trace(shadow, element);
    }
    projector_trace /= static_cast<double>(1 << k);
    if (k == 0) {
        return -std::log2(lambda_high);
    }
    double log_low = std::log2(lambda_low);
    return -log_low - (std::log2(lambda_high) - log_low) * projector_trace;
}

EpsilonGrid EpsilonGrid::log_spaced(double lo, int count) {
    if (!(lo > 0.0 && lo < 1.0) || count < 2) {
        throw std::invalid_argument("log_spaced needs 0 < lo < 1 and count >= 2");
    }
    EpsilonGrid grid;
    double step = -std::log10(lo) / (count - 1);
    for (int i = 0; i < count; ++i) {
        grid.values.push_back(i + 1 == count ? 1.0 : std::pow(10.0, std::log10(lo) + step * i));
    }
    return grid;
}

void EpsilonGrid::validate() const {
    if (values.empty() || values.back() != 1.0) {
        throw std::invalid_argument("epsilon grid must be non-empty and end at 1");
    }
    for (size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0 && values[i] <= 1.0) || (i > 0 && values[i] <= values[i - 1])) {
            throw std::invalid_argument("epsilon grid must be strictly increasing in (0, 1]");
        }
    }
}

SampleShadowEntropies sample_shadow_entropies(const ShadowOutcome &pair_shadow, const StatePrediction &prediction,
                                              const EpsilonGrid &grid) {
    ShadowOutcome ancilla{{pair_shadow.bases[0]}, {pair_shadow.outcomes[0]}};
    auto single_gens = prediction.ancilla_generators();
    auto pair_gens = prediction.generators();
    SampleShadowEntropies out;
    out.single.reserve(grid.values.size());
    out.pair.reserve(grid.values.size());
    for (double eps : grid.values) {
        out.single.push_back(shadow_entropy_stabilizer(ancilla, single_gens, eps));
        out.pair.push_back(shadow_entropy_stabilizer(pair_shadow, pair_gens, eps));
    }
    return out;
}

MeanSE mean_se(const std::vector<double> &values) {
    MeanSE out;
    out.n = static_cast<long>(values.size());
    if (values.empty()) {
        return out;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    out.mean = sum / out.n;
    if (out.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.se = std::sqrt(ss / (out.n - 1) / out.n);
    }
    return out;
}

MeanSE min_over(const std::vector<MeanSE> &curves, int *argmin) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(curves.size()); ++i) {
        if (curves[i].mean < curves[best].mean) {
            best = i;
        }
    }
    if (argmin != nullptr) {
        *argmin = best;
    }
    return curves.at(best);
}

MeanSE max_over(const std::vector<MeanSE> &curves, int *argmax) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(curves.size()); ++i) {
        if (curves[i].mean > curves[best].mean) {
            best = i;
        }
    }
    if (argmax != nullptr) {
        *argmax = best;
    }
    return curves.at(best);
}

BoundCurves bound_curves(const std::vector<ShadowOutcome> &shadows, const std::vector<StatePrediction> &predictions,
                         const EpsilonGrid &grid) {
    if (shadows.empty() || shadows.size() != predictions.size()) {
        throw std::invalid_argument("bound_curves needs matching, non-empty sample lists");
    }
    grid.validate();
    size_t ne = grid.values.size();
    std::vector<std::vector<double>> upper(ne);
    std::vector<std::vector<double>> lower(ne);
    for (size_t s = 0; s < shadows.size(); ++s) {
        auto ent = sample_shadow_entropies(shadows[s], predictions[s], grid);
        for (size_t e = 0; e < ne; ++e) {
            upper[e].push_back(ent.single[e]);
            lower[e].push_back(ent.single[e] - ent.pair[e]);
        }
    }
    BoundCurves out;
    out.epsilon = grid.values;
    for (size_t e = 0; e < ne; ++e) {
        out.upper.push_back(mean_se(upper[e]));
        out.lower.push_back(mean_se(lower[e]));
    }
    out.upper_envelope = min_over(out.upper, &out.upper_argmin);
    out.lower_envelope = max_over(out.lower, &out.lower_argmax);
    return out;
}

}  // namespace ptim
