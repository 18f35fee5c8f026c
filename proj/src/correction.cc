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

#include "ptim/correction.h"

#include <algorithm>
#include <stdexcept>

#include "ptim/replay.h"

namespace ptim {

namespace {

AugmentedPattern augment(const SyndromeProblem &problem, bool primal) {
    AugmentedPattern out;
    out.num_defects = problem.num_defects();
    if (out.num_defects == 0) {
        return out;
    }
    Matching m = mwpm_exact(problem.graph);
    out.matching_weight = m.total_weight;
    (primal ? out.added_e : out.added_s) = matched_slots(problem, m);
    return out;
}

int transfer_sign(const MeasurementRecord &record) {
    const auto &cfg = record.config();
    int sign = record.initial_parity();
    for (int i = 0; i + 1 < cfg.L; ++i) {
        sign *= record.observed_e(cfg.T + 1, i);
    }
    return sign;
}

void require_ancilla(const MeasurementRecord &record) {
    if (!record.has_ancilla()) {
        throw std::invalid_argument("state prediction needs an ancilla or shadow record");
    }
}

}  // namespace

AugmentedPattern augment_E(const MeasurementRecord &record) { return augment(build_primal_graph(record), true); }

AugmentedPattern augment_S(const MeasurementRecord &record, DualParityMode mode) {
    return augment(build_dual_graph(record, mode), false);
}

DualParityMode default_dual_mode(const MeasurementRecord &record) {
    return record.config().protocol == ProtocolKind::kHalfChain ? DualParityMode::kPlusParity
                                                                : DualParityMode::kMinusParityOrAncilla;
}

CorrectionPattern decode(const MeasurementRecord &record, Rng &rng) {
    AugmentedPattern aug = augment_E(record);
    ReplayInput input;
    input.added_e = &aug.added_e;
    ReplayTracker tracker = replay(record, input);
    CorrectionPattern out;
    int L = record.num_system_qubits();
    out.bits.resize(L);
    for (int i = 0; i < L; ++i) {
        out.bits[i] = tracker.bit(i);
    }
    out.predicted_survival = tracker.survived();
    out.contradictions = tracker.contradictions();
    if (!out.predicted_survival) {
        out.random_choice = true;
        if (random_sign(rng) < 0) {
            for (auto &b : out.bits) {
                b ^= 1;
            }
        }
    }
    return out;
}

int decoding_correlation(int encoded_bit, const CorrectionPattern &c, int z_readout) {
    int sign = (encoded_bit ^ c.bits.at(0)) ? -1 : +1;
    return sign * z_readout;
}

std::vector<PauliString> StatePrediction::generators() const {
    std::vector<PauliString> g;
    if (form == PredictionForm::kEntangled) {
        g.push_back(PauliString::zz(0, 1, sign_zz));
    } else if (form == PredictionForm::kProduct) {
        g.push_back(PauliString::x(0, sign_xa));
    }
    g.push_back(PauliString::xx(0, 1, sign_xx));
    return g;
}

std::vector<PauliString> StatePrediction::ancilla_generators() const {
    if (form == PredictionForm::kProduct) {
        return {PauliString::x(0, sign_xa)};
    }
    return {};
}

MatrixXc stabilizer_density_matrix(const std::vector<PauliString> &generators, int num_qubits) {
    int d = 1 << num_qubits;
    MatrixXc rho = MatrixXc::Identity(d, d);
    for (const auto &g : generators) {
        rho = rho * (MatrixXc::Identity(d, d) + pauli_string_matrix(g, num_qubits)) * 0.5;
    }
    return rho / static_cast<double>(1 << (num_qubits - static_cast<int>(generators.size())));
}

MatrixXc StatePrediction::to_density_matrix() const { return stabilizer_density_matrix(generators(), 2); }
MatrixXc StatePrediction::ancilla_density_matrix() const { return stabilizer_density_matrix(ancilla_generators(), 1); }

std::optional<int> recorded_path_parity(const MeasurementRecord &record, const std::vector<SlotRef> &added_s) {
    int L = record.num_system_qubits();
    int R = record.num_rounds();
    // cut[e][t + 1] - cut[e][a] counts S (recorded or added) on edge e in S-slots [a, t].
    std::vector<std::vector<int>> cut(L - 1, std::vector<int>(R + 1, 0));
    std::vector<std::vector<uint8_t>> added(L - 1, std::vector<uint8_t>(R, 0));
    for (auto s : added_s) {
        added[s.location][s.time] = 1;
    }
    for (int e = 0; e + 1 < L; ++e) {
        for (int t = 0; t < R; ++t) {
            int here = (record.observed_s(t, e) != 0 || added[e][t]) ? 1 : 0;
            cut[e][t + 1] = cut[e][t] + here;
        }
    }
    std::vector<std::vector<int>> times(L);
    for (int i = 0; i < L; ++i) {
        for (int t = 0; t < R; ++t) {
            if (record.observed_e(t, i) != 0) {
                times[i].push_back(t);
            }
        }
    }
    auto linked = [&](int e, int t1, int t2) {
        int lo = std::min(t1, t2);
        int hi = std::max(t1, t2);
        return cut[e][hi] - cut[e][lo] == 0;
    };
    // completes[i][k]: a path can continue from the k-th E on column i to the right edge.
    std::vector<std::vector<uint8_t>> completes(L);
    completes[L - 1].assign(times[L - 1].size(), 1);
    for (int i = L - 2; i >= 0; --i) {
        completes[i].assign(times[i].size(), 0);
        for (size_t k = 0; k < times[i].size(); ++k) {
            for (size_t n = 0; n < times[i + 1].size(); ++n) {
                if (completes[i + 1][n] && linked(i, times[i][k], times[i + 1][n])) {
                    completes[i][k] = 1;
                    break;
                }
            }
        }
    }
    int prev = -1;
    int parity = 1;
    for (int i = 0; i < L; ++i) {
        int chosen = -1;
        for (size_t k = 0; k < times[i].size(); ++k) {
            if (completes[i][k] && (i == 0 || linked(i - 1, prev, times[i][k]))) {
                chosen = times[i][k];
                break;
            }
        }
        if (chosen < 0) {
            return std::nullopt;
        }
        parity *= record.observed_e(chosen, i);
        prev = chosen;
    }
    return parity;
}

StatePrediction predict_state(const MeasurementRecord &record, PredictionDiagnostics *diag) {
    require_ancilla(record);
    int sign_xx = transfer_sign(record);
    AugmentedPattern aug = augment_E(record);
    AugmentedPattern aug_s = augment_S(record, default_dual_mode(record));
    aug.added_s = std::move(aug_s.added_s);
    aug.num_defects += aug_s.num_defects;
    aug.matching_weight += aug_s.matching_weight;

    ReplayInput full;
    full.added_e = &aug.added_e;
    full.added_s = &aug.added_s;
    ReplayTracker classify = replay(record, full);
    PredictionDiagnostics local;
    local.contradictions = classify.contradictions();
    StatePrediction out = StatePrediction::partial_mixed(sign_xx);
    if (classify.survived()) {
        ReplayInput no_added_s;
        no_added_s.added_e = &aug.added_e;
        ReplayTracker tracker = replay(record, no_added_s);
        if (tracker.survived()) {
            int a = record.num_system_qubits();
            int last = a - 1;
            out = StatePrediction::entangled((tracker.bit(a) ^ tracker.bit(last)) ? -1 : +1, sign_xx);
        }
    } else {
        ReplayInput no_added_e;
        no_added_e.added_s = &aug.added_s;
        ReplayTracker tracker = replay(record, no_added_e);
        if (!tracker.survived()) {
            int sign_xa = tracker.designated_sign();
            auto path = recorded_path_parity(record, aug.added_s);
            local.path_found = path.has_value();
            local.path_mismatch = path.has_value() && record.initial_parity() * *path != sign_xa;
            out = StatePrediction::product(sign_xa, sign_xx);
        }
    }
    if (diag != nullptr) {
        local.augmentation = std::move(aug);
        *diag = std::move(local);
    }
    return out;
}

StatePrediction predict_state_naive(const MeasurementRecord &record, PredictionDiagnostics *diag) {
    require_ancilla(record);
    int sign_xx = transfer_sign(record);
    ReplayTracker tracker = replay(record, ReplayInput{});
    PredictionDiagnostics local;
    local.contradictions = tracker.contradictions();
    StatePrediction out = StatePrediction::partial_mixed(sign_xx);
    if (!tracker.survived()) {
        out = StatePrediction::product(tracker.designated_sign(), sign_xx);
        auto path = recorded_path_parity(record, {});
        local.path_found = path.has_value();
        local.path_mismatch = path.has_value() && record.initial_parity() * *path != out.sign_xa;
    }
    if (diag != nullptr) {
        *diag = std::move(local);
    }
    return out;
}

}  // namespace ptim
