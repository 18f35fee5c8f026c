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

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

namespace ptim {
namespace {

using testing::max_abs_diff;
using testing::tableau_from_events;

ProtocolConfig cfg_of(ProtocolKind kind, int L, double p, double eta, uint64_t sample = 0, uint64_t seed = 1) {
    return ProtocolConfig::make(kind, L, p, eta, seed, sample);
}

int count_kind(const std::vector<MeasurementEvent> &events, OpKind kind, bool bulk_only = true) {
    int n = 0;
    for (const auto &ev : events) {
        n += ev.kind == kind && (!bulk_only || ev.maskable);
    }
    return n;
}

TEST(Protocols, DegenerateProbabilities) {
    auto c0 = cfg_of(ProtocolKind::kAncilla, 6, 0.0, 0.0);
    auto s0 = protocol_ancilla(c0);
    EXPECT_EQ(count_kind(s0.record.events(), OpKind::kE), 0);
    EXPECT_EQ(count_kind(s0.record.events(), OpKind::kS), c0.T * (c0.L - 1));
    EXPECT_EQ(s0.ancilla_entropy, 1);

    auto c1 = cfg_of(ProtocolKind::kAncilla, 6, 1.0, 0.0);
    auto s1 = protocol_ancilla(c1);
    EXPECT_EQ(count_kind(s1.record.events(), OpKind::kS), 0);
    EXPECT_EQ(s1.ancilla_entropy, 0);
}

TEST(Protocols, EventCountIsBinomial) {
    int L = 6;
    int T = 6;
    double p = 0.3;
    double total = 0;
    int runs = 1000;
    for (int s = 0; s < runs; ++s) {
        auto cfg = cfg_of(ProtocolKind::kAncilla, L, p, 0.0, s);
        ClusterState state(InitialStateSpec::ghz(L, 1, true));
        Rng rng = make_stream(cfg.master_seed, cfg.sample_index, Stream::kEvolution);
        total += count_kind(run_bulk_evolution(state, cfg, rng), OpKind::kE);
    }
    double n = static_cast<double>(L) * T * runs;
    double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(total, n * p, 3 * sigma);
}

TEST(Protocols, MaskingRates) {
    auto full = protocol_ancilla(cfg_of(ProtocolKind::kAncilla, 8, 0.5, 0.0));
    EXPECT_EQ(full.record.count_masked(), 0);
    EXPECT_EQ(full.record.observed_events().size(), full.record.events().size());

    auto none = protocol_ancilla(cfg_of(ProtocolKind::kAncilla, 8, 0.5, 1.0));
    EXPECT_EQ(none.record.count_masked(), none.record.count_maskable());
    for (const auto &ev : none.record.observed_events()) {
        EXPECT_GE(ev.time, none.record.bulk_rounds());
    }

    long masked = 0;
    long maskable = 0;
    for (int s = 0; s < 1000; ++s) {
        auto r = protocol_ancilla(cfg_of(ProtocolKind::kAncilla, 6, 0.5, 0.2, s)).record;
        masked += r.count_masked();
        maskable += r.count_maskable();
    }
    double sigma = std::sqrt(maskable * 0.2 * 0.8);
    EXPECT_NEAR(masked, 0.2 * maskable, 3 * sigma);
}

TEST(Protocols, HalfChain) {
    for (int s = 0; s < 20; ++s) {
        EXPECT_EQ(protocol_halfchain(cfg_of(ProtocolKind::kHalfChain, 8, 0.0, 0.0, s)).half_chain_entropy, 1);
        EXPECT_EQ(protocol_halfchain(cfg_of(ProtocolKind::kHalfChain, 8, 1.0, 0.0, s)).half_chain_entropy, 0);
    }
    EXPECT_THROW(protocol_halfchain(cfg_of(ProtocolKind::kHalfChain, 7, 0.5, 0.0)), std::invalid_argument);
}

TEST(Protocols, HalfChainMatchesTableauAtSmallSize) {
    // The final entropy from the cluster model equals the rank formula on
    // the ground-truth event list.
    for (int s = 0; s < 200; ++s) {
        auto cfg = cfg_of(ProtocolKind::kHalfChain, 4, 0.5, 0.0, s);
        auto sample = protocol_halfchain(cfg);
        Tableau tab = tableau_from_events(InitialStateSpec::ghz(4), sample.record.events());
        std::vector<int> half{0, 1};
        EXPECT_EQ(tab.entanglement_entropy(half), sample.half_chain_entropy);
    }
}

TEST(Protocols, DecodingNoiselessAtZeroP) {
    for (int s = 0; s < 50; ++s) {
        auto sample = protocol_decoding(cfg_of(ProtocolKind::kDecoding, 6, 0.0, 0.0, s));
        EXPECT_EQ(sample.z_readout, sample.encoded_bit ? -1 : +1);
        EXPECT_TRUE(sample.survived);
    }
}

TEST(Protocols, DecodingUncorrelatedAtPOne) {
    double corr = 0;
    int n = 4000;
    for (int s = 0; s < n; ++s) {
        auto sample = protocol_decoding(cfg_of(ProtocolKind::kDecoding, 4, 1.0, 0.0, s));
        corr += (sample.encoded_bit ? -1 : 1) * sample.z_readout;
    }
    EXPECT_NEAR(corr / n, 0.0, 3.0 / std::sqrt(n));
}

TEST(Protocols, TransferRoundLayout) {
    auto cfg = cfg_of(ProtocolKind::kShadow, 5, 0.4, 0.3);
    auto sample = protocol_shadow(cfg);
    const auto &r = sample.record;
    EXPECT_EQ(r.num_rounds(), cfg.T + 2);
    for (int e = 0; e < 4; ++e) {
        EXPECT_NE(r.observed_s(cfg.T, e), 0);
    }
    for (int i = 0; i < 4; ++i) {
        EXPECT_NE(r.observed_e(cfg.T + 1, i), 0);
    }
    EXPECT_EQ(r.observed_e(cfg.T + 1, 4), 0);
}

TEST(Protocols, ShadowBellCorrelations) {
    PairState bell{{PauliString::zz(0, 1), PauliString::xx(0, 1)}};
    auto probs = pair_outcome_probabilities(bell, Axis::kZ, Axis::kZ);
    EXPECT_DOUBLE_EQ(probs[0], 0.5);
    EXPECT_DOUBLE_EQ(probs[3], 0.5);
    EXPECT_DOUBLE_EQ(probs[1], 0.0);
    EXPECT_DOUBLE_EQ(probs[2], 0.0);

    PairState prod{{PauliString::x(0), PauliString::xx(0, 1)}};
    auto px = pair_outcome_probabilities(prod, Axis::kX, Axis::kZ);
    EXPECT_DOUBLE_EQ(px[0] + px[1], 1.0);
}

TEST(Protocols, ShadowProbabilitiesMatchTableau) {
    int checked = 0;
    for (int s = 0; s < 200; ++s) {
        auto cfg = cfg_of(ProtocolKind::kShadow, 4, 0.5, 0.0, s);
        auto sample = protocol_shadow(cfg);
        Tableau tab = tableau_from_events(InitialStateSpec::ghz(4, 1, true), sample.record.events());
        std::vector<int> pair{4, 3};
        MatrixXc rho = tab.reduced_density_matrix(pair);
        for (Axis b0 : {Axis::kX, Axis::kY, Axis::kZ}) {
            for (Axis b1 : {Axis::kX, Axis::kY, Axis::kZ}) {
                auto probs = pair_outcome_probabilities(sample.true_state, b0, b1);
                for (int idx = 0; idx < 4; ++idx) {
                    int o0 = (idx & 2) ? -1 : 1;
                    int o1 = (idx & 1) ? -1 : 1;
                    PauliString p0 = PauliString::single(0, b0, o0);
                    PauliString p1 = PauliString::single(1, b1, o1);
                    MatrixXc proj0 = (MatrixXc::Identity(4, 4) + pauli_string_matrix(p0, 2)) / 2.0;
                    MatrixXc proj1 = (MatrixXc::Identity(4, 4) + pauli_string_matrix(p1, 2)) / 2.0;
                    double expected = (rho * proj0 * proj1).trace().real();
                    ASSERT_NEAR(probs[idx], expected, 1e-12);
                    ++checked;
                }
            }
        }
        EXPECT_EQ(pair_expectation(sample.true_state, PauliString::single(0, Axis::kY)), 0);
        EXPECT_EQ(pair_expectation(sample.true_state, PauliString::single(1, Axis::kY)), 0);
    }
    EXPECT_GT(checked, 0);
}

TEST(Protocols, ShadowSamplingFrequencies) {
    // Fixed Bell state: sample outcome frequencies in the (X, X) basis pair.
    PairState bell{{PauliString::zz(0, 1), PauliString::xx(0, 1, -1)}};
    auto probs = pair_outcome_probabilities(bell, Axis::kX, Axis::kX);
    Rng rng(17);
    std::array<int, 4> counts{};
    int n = 10000;
    for (int i = 0; i < n; ++i) {
        double u = uniform01(rng);
        int idx = 0;
        double acc = probs[0];
        while (idx < 3 && u >= acc) {
            acc += probs[++idx];
        }
        ++counts[idx];
    }
    for (int idx = 0; idx < 4; ++idx) {
        double sigma = std::sqrt(n * probs[idx] * (1 - probs[idx]));
        EXPECT_NEAR(counts[idx], n * probs[idx], 3 * sigma + 1e-9);
    }
}

TEST(Protocols, Deterministic) {
    auto cfg = cfg_of(ProtocolKind::kShadow, 8, 0.5, 0.2, 42, 9);
    auto a = protocol_shadow(cfg);
    auto b = protocol_shadow(cfg);
    ASSERT_EQ(a.record.events().size(), b.record.events().size());
    for (size_t i = 0; i < a.record.events().size(); ++i) {
        const auto &x = a.record.events()[i];
        const auto &y = b.record.events()[i];
        EXPECT_TRUE(x.time == y.time && x.kind == y.kind && x.location == y.location && x.outcome == y.outcome &&
                    x.recorded == y.recorded);
    }
    EXPECT_EQ(a.basis_ancilla, b.basis_ancilla);
    EXPECT_EQ(a.outcome_last, b.outcome_last);
}

TEST(Protocols, NoiselessReplayReproducesFinalState) {
    for (int s = 0; s < 200; ++s) {
        auto cfg = cfg_of(ProtocolKind::kShadow, 6, 0.5, 0.0, s);
        auto [state, record] = evolve_ancilla(cfg);
        ClusterState replayed(InitialStateSpec::ghz(6, 1, true));
        for (const auto &ev : record.observed_events()) {
            replayed.apply({ev.kind, ev.location}, OutcomeSource::forced(ev.outcome));
        }
        for (int q = 0; q < state.num_qubits(); ++q) {
            for (int r = 0; r < state.num_qubits(); ++r) {
                ASSERT_EQ(state.color_of(q) == state.color_of(r), replayed.color_of(q) == replayed.color_of(r));
            }
            ASSERT_EQ(state.sign_of(state.color_of(q)), replayed.sign_of(replayed.color_of(q)));
        }
        auto p0 = state.pair_state(6, 5);
        auto p1 = replayed.pair_state(6, 5);
        ASSERT_EQ(p0.generators, p1.generators);
    }
}

TEST(Protocols, AncillaNeverTouched) {
    for (int s = 0; s < 50; ++s) {
        auto sample = protocol_shadow(cfg_of(ProtocolKind::kShadow, 5, 0.5, 0.2, s));
        for (const auto &ev : sample.record.events()) {
            if (ev.kind == OpKind::kE) {
                EXPECT_LT(ev.location, 5);
            } else {
                EXPECT_LT(ev.location, 4);
            }
        }
    }
}

}  // namespace
}  // namespace ptim
