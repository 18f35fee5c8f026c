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

#ifndef PTIM_REPLAY_H
#define PTIM_REPLAY_H

#include <cstdint>
#include <vector>

#include "ptim/record.h"
#include "ptim/syndrome.h"

namespace ptim {

/// Extended colored-cluster simulation driven by an observed record, where
/// some events are hypothetical (no outcome) and some signs or bit
/// configurations are unknown.
///
/// All system qubits (and the ancilla) start in one designated cluster with
/// representative bits 0. For computational-basis inits the cluster sign is
/// unknown; this models |m...m> with m unknown.
class ReplayTracker {
   public:
    static constexpr int kUnknown = 0;

    /// `initial_sign` is +1/-1, or kUnknown.
    ReplayTracker(int num_system_qubits, bool with_ancilla, int initial_sign);

    void observe_e(int site, int outcome);
    void hypothetical_e(int site);
    void observe_s(int edge, int outcome);
    void hypothetical_s(int edge);

    /// Designated color present (and, with an ancilla, holding >= 2 qubits).
    bool survived() const;
    bool designated_exists() const { return designated_ >= 0; }
    /// Number of recorded outcomes that contradicted a known deterministic value.
    int contradictions() const { return contradictions_; }

    int color_of(int q) const { return color_[q]; }
    uint8_t bit(int q) const { return bit_[q]; }
    bool bits_known(int q) const { return bits_known_[color_[q]]; }
    /// Cluster sign of the qubit's cluster, or kUnknown.
    int sign_of_qubit(int q) const { return sign_[color_[q]]; }
    int designated_sign() const { return designated_ >= 0 ? sign_[designated_] : kUnknown; }
    int cluster_size(int q) const { return static_cast<int>(members_[color_[q]].size()); }
    int num_qubits() const { return static_cast<int>(color_.size()); }

   private:
    int fresh_color(int sign);
    void erase(int site, int outcome_or_unknown);
    void merge(int edge, int outcome_or_unknown);

    int L_;
    bool with_ancilla_;
    std::vector<int> color_;
    std::vector<uint8_t> bit_;
    std::vector<std::vector<int>> members_;
    std::vector<int8_t> sign_;
    std::vector<uint8_t> bits_known_;
    std::vector<int> free_colors_;
    int designated_ = 0;
    int contradictions_ = 0;
};

/// Which events of a record (and which added hypothetical events) a replay
/// applies. Events are applied in the protocol's round and sweep order.
struct ReplayInput {
    bool recorded_e = true;
    bool recorded_s = true;
    const std::vector<SlotRef> *added_e = nullptr;
    const std::vector<SlotRef> *added_s = nullptr;
};

ReplayTracker replay(const MeasurementRecord &record, const ReplayInput &input);

}  // namespace ptim

#endif
