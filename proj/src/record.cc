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

#include "ptim/record.h"

#include <stdexcept>
#include <string>

namespace ptim {

std::string_view protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::kHalfChain:
            return "halfchain";
        case ProtocolKind::kAncilla:
            return "ancilla";
        case ProtocolKind::kDecoding:
            return "decode";
        case ProtocolKind::kShadow:
            return "shadow";
    }
    return "?";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
    for (auto k : {ProtocolKind::kHalfChain, ProtocolKind::kAncilla, ProtocolKind::kDecoding, ProtocolKind::kShadow}) {
        if (protocol_name(k) == name) {
            return k;
        }
    }
    if (name == "decoding") {
        return ProtocolKind::kDecoding;
    }
    return std::nullopt;
}

int ProtocolConfig::default_T(ProtocolKind protocol, int L) {
    return protocol == ProtocolKind::kHalfChain ? 10 * L : L;
}

ProtocolConfig ProtocolConfig::make(ProtocolKind protocol, int L, double p, double eta, uint64_t seed,
                                    uint64_t sample_index) {
    ProtocolConfig cfg;
    cfg.protocol = protocol;
    cfg.L = L;
    cfg.T = default_T(protocol, L);
    cfg.p = p;
    cfg.eta = eta;
    cfg.master_seed = seed;
    cfg.sample_index = sample_index;
    return cfg;
}

void ProtocolConfig::validate() const {
    if (L < 2) {
        throw std::invalid_argument("L must be at least 2");
    }
    if (T < 1) {
        throw std::invalid_argument("T must be at least 1");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("eta must lie in [0, 1]");
    }
    if (ghz_parity != 1 && ghz_parity != -1) {
        throw std::invalid_argument("ghz_parity must be +1 or -1");
    }
    if (protocol == ProtocolKind::kHalfChain && L % 2 != 0) {
        throw std::invalid_argument("half-chain protocol needs even L, got " + std::to_string(L));
    }
}

int ProtocolConfig::num_rounds() const {
    switch (protocol) {
        case ProtocolKind::kHalfChain:
            return T;
        case ProtocolKind::kDecoding:
            return T + 1;
        case ProtocolKind::kAncilla:
        case ProtocolKind::kShadow:
            return T + 2;
    }
    return T;
}

MeasurementRecord::MeasurementRecord(const ProtocolConfig &config, std::vector<MeasurementEvent> events)
    : config_(config), rounds_(config.num_rounds()), events_(std::move(events)) {
    int L = config_.L;
    obs_e_.assign(static_cast<size_t>(rounds_) * L, 0);
    obs_s_.assign(static_cast<size_t>(rounds_) * (L - 1), 0);
    applied_e_.assign(obs_e_.size(), 0);
    applied_s_.assign(obs_s_.size(), 0);
    for (const auto &ev : events_) {
        if (ev.time < 0 || ev.time >= rounds_) {
            throw std::invalid_argument("event time outside the record");
        }
        if (ev.recorded && !ev.applied) {
            throw std::invalid_argument("recorded events must be applied");
        }
        if (ev.kind == OpKind::kE) {
            size_t idx = static_cast<size_t>(ev.time) * L + ev.location;
            applied_e_[idx] = ev.applied;
            if (ev.recorded) obs_e_[idx] = ev.outcome;
        } else {
            size_t idx = static_cast<size_t>(ev.time) * (L - 1) + ev.location;
            applied_s_[idx] = ev.applied;
            if (ev.recorded) obs_s_[idx] = ev.outcome;
        }
    }
}

std::vector<MeasurementEvent> MeasurementRecord::observed_events() const {
    std::vector<MeasurementEvent> out;
    for (const auto &ev : events_) {
        if (ev.recorded) out.push_back(ev);
    }
    return out;
}

int MeasurementRecord::count_masked() const {
    int n = 0;
    for (const auto &ev : events_) n += (ev.applied && !ev.recorded) ? 1 : 0;
    return n;
}

int MeasurementRecord::count_maskable() const {
    int n = 0;
    for (const auto &ev : events_) n += ev.maskable ? 1 : 0;
    return n;
}

}  // namespace ptim
