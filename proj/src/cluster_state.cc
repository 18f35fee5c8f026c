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

#include "ptim/cluster_state.h"

#include <stdexcept>
#include <string>

namespace ptim {

InitialStateSpec InitialStateSpec::ghz(int num_system_qubits, int parity, bool with_ancilla) {
    InitialStateSpec spec;
    spec.kind = InitKind::kGhz;
    spec.num_system_qubits = num_system_qubits;
    spec.ghz_parity = parity;
    spec.with_ancilla = with_ancilla;
    return spec;
}

InitialStateSpec InitialStateSpec::classical(std::vector<uint8_t> bits) {
    InitialStateSpec spec;
    spec.kind = InitKind::kClassical;
    spec.num_system_qubits = static_cast<int>(bits.size());
    spec.classical_bits = std::move(bits);
    return spec;
}

void InitialStateSpec::validate() const {
    if (num_system_qubits < 2) {
        throw std::invalid_argument("need at least 2 system qubits");
    }
    if (ghz_parity != 1 && ghz_parity != -1) {
        throw std::invalid_argument("ghz_parity must be +1 or -1");
    }
    if (kind == InitKind::kClassical) {
        if (with_ancilla) {
            throw std::invalid_argument("classical initial states cannot carry an ancilla");
        }
        if (static_cast<int>(classical_bits.size()) != num_system_qubits) {
            throw std::invalid_argument("classical_bits must have one entry per system qubit");
        }
        for (uint8_t b : classical_bits) {
            if (b > 1) {
                throw std::invalid_argument("classical_bits entries must be 0 or 1");
            }
        }
    } else if (!classical_bits.empty()) {
        throw std::invalid_argument("GHZ initial states take no classical_bits");
    }
}

int OutcomeSource::check_deterministic(int expected) const {
    if (rng_ == nullptr && forced_ != expected) {
        throw std::logic_error("forced outcome " + std::to_string(forced_) +
                               " contradicts deterministic outcome " + std::to_string(expected));
    }
    return expected;
}

ClusterState::ClusterState(const InitialStateSpec &spec) : spec_(spec) {
    spec_.validate();
    int n = spec_.num_qubits();
    color_.assign(n, -1);
    position_.assign(n, -1);
    bit_.assign(n, 0);
    // One spare color: erasing a lone designated qubit allocates before it releases.
    members_.resize(n + 1);
    kind_.assign(n + 1, ClusterKind::kBell);
    sign_.assign(n + 1, +1);
    free_colors_.reserve(n + 1);
    for (int c = n; c >= 0; --c) {
        free_colors_.push_back(c);
    }
    if (spec_.kind == InitKind::kGhz) {
        designated_ = allocate_color(ClusterKind::kBell, spec_.ghz_parity);
        for (int q = 0; q < n; ++q) {
            attach(q, designated_);
        }
    } else {
        for (int q = 0; q < n; ++q) {
            bit_[q] = spec_.classical_bits[q];
            attach(q, allocate_color(ClusterKind::kZDefinite, +1));
        }
    }
}

int ClusterState::allocate_color(ClusterKind kind, int sign) {
    int c = free_colors_.back();
    free_colors_.pop_back();
    kind_[c] = kind;
    sign_[c] = static_cast<int8_t>(sign);
    members_[c].clear();
    return c;
}

void ClusterState::release_color(int color) {
    if (color == designated_) {
        designated_ = -1;
    }
    members_[color].clear();
    free_colors_.push_back(color);
}

void ClusterState::detach(int qubit) {
    auto &list = members_[color_[qubit]];
    int pos = position_[qubit];
    int last = list.back();
    list[pos] = last;
    position_[last] = pos;
    list.pop_back();
    color_[qubit] = -1;
}

void ClusterState::attach(int qubit, int color) {
    color_[qubit] = color;
    position_[qubit] = static_cast<int>(members_[color].size());
    members_[color].push_back(qubit);
}

void ClusterState::merge_into(int loser, int winner, bool invert_loser) {
    for (int q : members_[loser]) {
        if (invert_loser) {
            bit_[q] ^= 1;
        }
        color_[q] = winner;
        position_[q] = static_cast<int>(members_[winner].size());
        members_[winner].push_back(q);
    }
    sign_[winner] = static_cast<int8_t>(sign_[winner] * sign_[loser]);
    release_color(loser);
}

void ClusterState::collapse_to_z(int color, bool invert) {
    std::vector<int> qubits = members_[color];
    release_color(color);
    for (int q : qubits) {
        if (invert) {
            bit_[q] ^= 1;
        }
        attach(q, allocate_color(ClusterKind::kZDefinite, +1));
    }
}

void ClusterState::check_site(int site) const {
    if (site < 0 || site >= spec_.num_system_qubits) {
        throw std::out_of_range("site " + std::to_string(site) + " is not a system qubit");
    }
}

MeasurementResult ClusterState::apply(Measurement m, OutcomeSource source) {
    return m.kind == OpKind::kE ? measure_e(m.location, source) : measure_s(m.location, source);
}

MeasurementResult ClusterState::measure_e(int site, OutcomeSource source) {
    check_site(site);
    int c = color_[site];
    if (kind_[c] == ClusterKind::kZDefinite) {
        int outcome = source.draw_random();
        release_color(c);
        attach(site, allocate_color(ClusterKind::kBell, outcome));
        return {outcome, false};
    }
    if (members_[c].size() == 1) {
        int outcome = source.check_deterministic(sign_[c]);
        if (c == designated_) {
            // The qubit keeps its state but the designated color is erased.
            int fresh = allocate_color(ClusterKind::kBell, sign_[c]);
            detach(site);
            release_color(c);
            attach(site, fresh);
        }
        return {outcome, true};
    }
    int outcome = source.draw_random();
    detach(site);
    sign_[c] = static_cast<int8_t>(sign_[c] * outcome);
    attach(site, allocate_color(ClusterKind::kBell, outcome));
    return {outcome, false};
}

MeasurementResult ClusterState::measure_s(int edge, OutcomeSource source) {
    if (edge < 0 || edge + 1 >= spec_.num_system_qubits) {
        throw std::out_of_range("edge " + std::to_string(edge) + " is not a system edge");
    }
    int i = edge;
    int j = edge + 1;
    int ci = color_[i];
    int cj = color_[j];
    int parity_outcome = (bit_[i] ^ bit_[j]) ? -1 : +1;
    bool zi = kind_[ci] == ClusterKind::kZDefinite;
    bool zj = kind_[cj] == ClusterKind::kZDefinite;

    if (ci == cj || (zi && zj)) {
        return {source.check_deterministic(parity_outcome), true};
    }
    int outcome = source.draw_random();
    bool mismatch = outcome != parity_outcome;
    if (zi || zj) {
        // The Bell side collapses onto the branch that reproduces the outcome.
        collapse_to_z(zi ? cj : ci, mismatch);
        return {outcome, false};
    }
    int winner;
    int loser;
    if (ci == designated_ || cj == designated_) {
        winner = designated_;
    } else {
        winner = members_[cj].size() > members_[ci].size() ? cj : ci;
    }
    loser = winner == ci ? cj : ci;
    merge_into(loser, winner, mismatch);
    return {outcome, false};
}

MeasurementResult ClusterState::measure_z(int site, OutcomeSource source) {
    check_site(site);
    int c = color_[site];
    int current = bit_[site] ? -1 : +1;
    if (kind_[c] == ClusterKind::kZDefinite) {
        return {source.check_deterministic(current), true};
    }
    int outcome = source.draw_random();
    collapse_to_z(c, outcome != current);
    return {outcome, false};
}

int ClusterState::entanglement_entropy(std::span<const int> subsystem) const {
    int n = num_qubits();
    if (subsystem.empty()) {
        throw std::invalid_argument("subsystem must be non-empty");
    }
    std::vector<uint8_t> inside(n, 0);
    for (int q : subsystem) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("subsystem index out of range");
        }
        inside[q] = 1;
    }
    std::vector<uint8_t> seen(n + 1, 0);
    int entropy = 0;
    for (int q = 0; q < n; ++q) {
        int c = color_[q];
        if (seen[c] || kind_[c] != ClusterKind::kBell || members_[c].size() < 2) {
            continue;
        }
        seen[c] = 1;
        bool any_in = false;
        bool any_out = false;
        for (int m : members_[c]) {
            (inside[m] ? any_in : any_out) = true;
        }
        entropy += (any_in && any_out) ? 1 : 0;
    }
    return entropy;
}

std::optional<int> ClusterState::designated_color() const {
    if (designated_ < 0) {
        return std::nullopt;
    }
    return designated_;
}

bool ClusterState::survived() const {
    if (spec_.kind == InitKind::kClassical) {
        for (int q = 0; q < num_qubits(); ++q) {
            if (kind_[color_[q]] == ClusterKind::kZDefinite) {
                return true;
            }
        }
        return false;
    }
    if (designated_ < 0) {
        return false;
    }
    if (!spec_.with_ancilla) {
        return true;
    }
    return members_[designated_].size() >= 2;
}

SurvivalInfo ClusterState::survival_and_config() const {
    SurvivalInfo info;
    info.survived = survived();
    info.bits = bit_;
    info.sign = designated_ >= 0 ? sign_[designated_] : +1;
    return info;
}

PairState ClusterState::pair_state(int q0, int q1) const {
    int c0 = color_[q0];
    int c1 = color_[q1];
    auto single = [&](int q, int local) {
        int c = color_[q];
        if (members_[c].size() != 1) {
            throw std::logic_error("pair_state: qubit is entangled outside the pair");
        }
        if (kind_[c] == ClusterKind::kZDefinite) {
            return PauliString::z(local, bit_[q] ? -1 : +1);
        }
        return PauliString::x(local, sign_[c]);
    };
    if (c0 == c1) {
        if (members_[c0].size() != 2 || kind_[c0] != ClusterKind::kBell) {
            throw std::logic_error("pair_state: cluster extends beyond the pair");
        }
        return {{PauliString::zz(0, 1, (bit_[q0] ^ bit_[q1]) ? -1 : +1), PauliString::xx(0, 1, sign_[c0])}};
    }
    return {{single(q0, 0), single(q1, 1)}};
}

int ClusterState::sign_product() const {
    int product = 1;
    std::vector<uint8_t> seen(num_qubits() + 1, 0);
    for (int q = 0; q < num_qubits(); ++q) {
        int c = color_[q];
        if (!seen[c] && kind_[c] == ClusterKind::kBell) {
            seen[c] = 1;
            product *= sign_[c];
        }
    }
    return product;
}

}  // namespace ptim
