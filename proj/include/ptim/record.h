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

#ifndef PTIM_RECORD_H
#define PTIM_RECORD_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ptim/state_spec.h"

namespace ptim {

enum class ProtocolKind : uint8_t { kHalfChain, kAncilla, kDecoding, kShadow };

std::string_view protocol_name(ProtocolKind kind);
std::optional<ProtocolKind> parse_protocol(std::string_view name);

struct ProtocolConfig {
    ProtocolKind protocol = ProtocolKind::kAncilla;
    int L = 8;
    int T = 8;
    double p = 0.5;
    double eta = 0.0;
    uint64_t master_seed = 0;
    uint64_t sample_index = 0;
    int ghz_parity = +1;

    /// 10 L for the half-chain protocol, L otherwise.
    static int default_T(ProtocolKind protocol, int L);
    static ProtocolConfig make(ProtocolKind protocol, int L, double p, double eta, uint64_t seed = 0,
                               uint64_t sample_index = 0);

    void validate() const;
    bool has_ancilla() const { return protocol == ProtocolKind::kAncilla || protocol == ProtocolKind::kShadow; }
    bool classical_init() const { return protocol == ProtocolKind::kDecoding; }
    /// Bulk rounds plus the perfect closing rounds of the protocol.
    int num_rounds() const;
};

/// One applied measurement. Events at t >= T belong to the perfect closing
/// rounds and are never masked.
struct MeasurementEvent {
    int time = 0;
    OpKind kind = OpKind::kE;
    int location = 0;
    int8_t outcome = +1;
    bool applied = true;
    bool recorded = true;
    bool maskable = true;
};

/// Spacetime measurement history of one trajectory. The full event list is
/// ground truth kept for diagnostics; estimators only read the observed
/// view (recorded events).
class MeasurementRecord {
   public:
    MeasurementRecord() = default;
    MeasurementRecord(const ProtocolConfig &config, std::vector<MeasurementEvent> events);

    const ProtocolConfig &config() const { return config_; }
    int num_system_qubits() const { return config_.L; }
    int num_edges() const { return config_.L - 1; }
    int bulk_rounds() const { return config_.T; }
    int num_rounds() const { return rounds_; }
    bool has_ancilla() const { return config_.has_ancilla(); }
    /// Known X-parity of the initial state; 0 for computational-basis inits.
    int initial_parity() const { return config_.classical_init() ? 0 : config_.ghz_parity; }

    const std::vector<MeasurementEvent> &events() const { return events_; }
    std::vector<MeasurementEvent> observed_events() const;

    /// Recorded outcome (+1/-1) or 0 when nothing was recorded there.
    int observed_e(int t, int site) const { return obs_e_[t * config_.L + site]; }
    int observed_s(int t, int edge) const { return obs_s_[t * (config_.L - 1) + edge]; }
    /// Whether an unrecorded measurement may have happened at this slot
    /// (only inside the bulk; closing rounds are fully known).
    bool hidden_e_possible(int t, int site) const { return t < config_.T && observed_e(t, site) == 0; }
    bool hidden_s_possible(int t, int edge) const { return t < config_.T && observed_s(t, edge) == 0; }

    /// Ground truth: whether a measurement was applied at the slot.
    bool applied_e(int t, int site) const { return applied_e_[t * config_.L + site]; }
    bool applied_s(int t, int edge) const { return applied_s_[t * (config_.L - 1) + edge]; }

    int count_masked() const;
    int count_maskable() const;

   private:
    ProtocolConfig config_;
    int rounds_ = 0;
    std::vector<MeasurementEvent> events_;
    std::vector<int8_t> obs_e_;
    std::vector<int8_t> obs_s_;
    std::vector<uint8_t> applied_e_;
    std::vector<uint8_t> applied_s_;
};

}  // namespace ptim

#endif
