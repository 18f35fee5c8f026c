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

#ifndef PTIM_PROTOCOLS_H
#define PTIM_PROTOCOLS_H

#include <vector>

#include "ptim/cluster_state.h"
#include "ptim/record.h"

namespace ptim {

/// T bulk timesteps. Each step sweeps sites 0..L-1 applying E with
/// probability p, then edges 0..L-2 applying S with probability 1-p. Every
/// applied event is returned with its outcome; all are maskable.
std::vector<MeasurementEvent> run_bulk_evolution(ClusterState &state, const ProtocolConfig &cfg, Rng &rng);

/// Drops each maskable event from the record with probability eta. Closing
/// rounds stay recorded.
MeasurementRecord mask_record(const ProtocolConfig &cfg, std::vector<MeasurementEvent> events, Rng &rng);

struct HalfChainSample {
    MeasurementRecord record;
    int half_chain_entropy = 0;
};

struct AncillaSample {
    MeasurementRecord record;
    int ancilla_entropy = 0;
};

struct DecodingSample {
    MeasurementRecord record;
    int encoded_bit = 0;
    /// Final Z readout on qubit 0, +1/-1.
    int z_readout = +1;
    /// Diagnostic: whether the encoded amplitudes survived.
    bool survived = false;
};

struct ShadowSample {
    MeasurementRecord record;
    Axis basis_ancilla = Axis::kZ;
    Axis basis_last = Axis::kZ;
    int outcome_ancilla = +1;
    int outcome_last = +1;
    /// Diagnostics, never read by estimators.
    PairState true_state;
    int ancilla_entropy = 0;
};

HalfChainSample protocol_halfchain(const ProtocolConfig &cfg);
AncillaSample protocol_ancilla(const ProtocolConfig &cfg);
DecodingSample protocol_decoding(const ProtocolConfig &cfg);
ShadowSample protocol_shadow(const ProtocolConfig &cfg);

/// Runs the ancilla protocol (bulk + entanglement transfer) and returns the
/// final cluster state alongside the record.
std::pair<ClusterState, MeasurementRecord> evolve_ancilla(const ProtocolConfig &cfg);

/// Joint probabilities P(o_0, o_1) for measuring `b0` on local qubit 0 and
/// `b1` on local qubit 1; index = 2 * [o_0 == -1] + [o_1 == -1].
std::array<double, 4> pair_outcome_probabilities(const PairState &state, Axis b0, Axis b1);

/// <P> for a two-qubit Pauli in the pure state: +/-1 or 0.
int pair_expectation(const PairState &state, const PauliString &p);

}  // namespace ptim

#endif
