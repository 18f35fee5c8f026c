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

#include "ptim/protocols.h"

#include <numeric>

namespace ptim {

std::vector<MeasurementEvent> run_bulk_evolution(ClusterState &state, const ProtocolConfig &cfg, Rng &rng) {
    std::vector<MeasurementEvent> events;
    int L = cfg.L;
    for (int t = 0; t < cfg.T; ++t) {
        for (int i = 0; i < L; ++i) {
            if (bernoulli(rng, cfg.p)) {
                auto r = state.measure_e(i, OutcomeSource::born(rng));
                events.push_back({t, OpKind::kE, i, static_cast<int8_t>(r.outcome), true, true, true});
            }
        }
        for (int e = 0; e + 1 < L; ++e) {
            if (bernoulli(rng, 1.0 - cfg.p)) {
                auto r = state.measure_s(e, OutcomeSource::born(rng));
                events.push_back({t, OpKind::kS, e, static_cast<int8_t>(r.outcome), true, true, true});
            }
        }
    }
    return events;
}

MeasurementRecord mask_record(const ProtocolConfig &cfg, std::vector<MeasurementEvent> events, Rng &rng) {
    for (auto &ev : events) {
        if (ev.maskable) {
            ev.recorded = !bernoulli(rng, cfg.eta);
        } else {
            ev.recorded = true;
        }
    }
    return MeasurementRecord(cfg, std::move(events));
}

namespace {

void closing_s_round(ClusterState &state, int t, Rng &rng, std::vector<MeasurementEvent> &events) {
    for (int e = 0; e + 1 < state.num_system_qubits(); ++e) {
        auto r = state.measure_s(e, OutcomeSource::born(rng));
        events.push_back({t, OpKind::kS, e, static_cast<int8_t>(r.outcome), true, true, false});
    }
}

}  // namespace

HalfChainSample protocol_halfchain(const ProtocolConfig &cfg) {
    cfg.validate();
    Rng evo = make_stream(cfg.master_seed, cfg.sample_index, Stream::kEvolution);
    Rng noise = make_stream(cfg.master_seed, cfg.sample_index, Stream::kNoise);
    ClusterState state(InitialStateSpec::ghz(cfg.L, cfg.ghz_parity, false));
    auto events = run_bulk_evolution(state, cfg, evo);
    std::vector<int> half(cfg.L / 2);
    std::iota(half.begin(), half.end(), 0);
    HalfChainSample out;
    out.half_chain_entropy = state.entanglement_entropy(half);
    out.record = mask_record(cfg, std::move(events), noise);
    return out;
}

std::pair<ClusterState, MeasurementRecord> evolve_ancilla(const ProtocolConfig &cfg) {
    cfg.validate();
    Rng evo = make_stream(cfg.master_seed, cfg.sample_index, Stream::kEvolution);
    Rng noise = make_stream(cfg.master_seed, cfg.sample_index, Stream::kNoise);
    ClusterState state(InitialStateSpec::ghz(cfg.L, cfg.ghz_parity, true));
    auto events = run_bulk_evolution(state, cfg, evo);
    // Entanglement transfer: every S, then E on all sites but the last.
    closing_s_round(state, cfg.T, evo, events);
    for (int i = 0; i + 1 < cfg.L; ++i) {
        auto r = state.measure_e(i, OutcomeSource::born(evo));
        events.push_back({cfg.T + 1, OpKind::kE, i, static_cast<int8_t>(r.outcome), true, true, false});
    }
    auto record = mask_record(cfg, std::move(events), noise);
    return {std::move(state), std::move(record)};
}

AncillaSample protocol_ancilla(const ProtocolConfig &cfg) {
    auto [state, record] = evolve_ancilla(cfg);
    AncillaSample out;
    int a = state.spec().ancilla();
    out.ancilla_entropy = state.entanglement_entropy(std::span<const int>(&a, 1));
    out.record = std::move(record);
    return out;
}

DecodingSample protocol_decoding(const ProtocolConfig &cfg) {
    cfg.validate();
    Rng evo = make_stream(cfg.master_seed, cfg.sample_index, Stream::kEvolution);
    Rng noise = make_stream(cfg.master_seed, cfg.sample_index, Stream::kNoise);
    DecodingSample out;
    out.encoded_bit = (evo() >> 63) ? 1 : 0;
    ClusterState state(InitialStateSpec::classical(std::vector<uint8_t>(cfg.L, static_cast<uint8_t>(out.encoded_bit))));
    auto events = run_bulk_evolution(state, cfg, evo);
    closing_s_round(state, cfg.T, evo, events);
    out.survived = state.survived();
    out.z_readout = state.measure_z(0, OutcomeSource::born(evo)).outcome;
    out.record = mask_record(cfg, std::move(events), noise);
    return out;
}

int pair_expectation(const PairState &state, const PauliString &p) {
    if (p.is_identity()) {
        return p.sign;
    }
    const auto &g = state.generators;
    PauliString g01 = multiply(g[0], g[1]);
    for (const auto &elem : {g[0], g[1], g01}) {
        if (elem.same_support_and_type(p)) {
            return elem.sign * p.sign;
        }
    }
    return 0;
}

std::array<double, 4> pair_outcome_probabilities(const PairState &state, Axis b0, Axis b1) {
    int e0 = pair_expectation(state, PauliString::single(0, b0));
    int e1 = pair_expectation(state, PauliString::single(1, b1));
    PauliString both = PauliString::single(0, b0);
    auto second = PauliString::single(1, b1);
    both.xs |= second.xs;
    both.zs |= second.zs;
    int e01 = pair_expectation(state, both);
    std::array<double, 4> probs{};
    for (int idx = 0; idx < 4; ++idx) {
        int o0 = (idx & 2) ? -1 : +1;
        int o1 = (idx & 1) ? -1 : +1;
        probs[idx] = 0.25 * (1 + o0 * e0 + o1 * e1 + o0 * o1 * e01);
    }
    return probs;
}

ShadowSample protocol_shadow(const ProtocolConfig &cfg) {
    auto [state, record] = evolve_ancilla(cfg);
    Rng shadow = make_stream(cfg.master_seed, cfg.sample_index, Stream::kShadow);
    ShadowSample out;
    int a = state.spec().ancilla();
    out.ancilla_entropy = state.entanglement_entropy(std::span<const int>(&a, 1));
    out.true_state = state.pair_state(a, cfg.L - 1);
    out.basis_ancilla = static_cast<Axis>(uniform_index(shadow, 3));
    out.basis_last = static_cast<Axis>(uniform_index(shadow, 3));
    auto probs = pair_outcome_probabilities(out.true_state, out.basis_ancilla, out.basis_last);
    double u = uniform01(shadow);
    int idx = 0;
    double acc = probs[0];
    while (idx < 3 && u >= acc) {
        ++idx;
        acc += probs[idx];
    }
    out.outcome_ancilla = (idx & 2) ? -1 : +1;
    out.outcome_last = (idx & 1) ? -1 : +1;
    out.record = std::move(record);
    return out;
}

}  // namespace ptim
