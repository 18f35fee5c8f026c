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

#include "ptim/replay.h"

#include <algorithm>
#include <stdexcept>

namespace ptim {

ReplayTracker::ReplayTracker(int num_system_qubits, bool with_ancilla, int initial_sign)
    : L_(num_system_qubits), with_ancilla_(with_ancilla) {
    int n = num_system_qubits + (with_ancilla ? 1 : 0);
    color_.assign(n, 0);
    bit_.assign(n, 0);
    members_.assign(n + 1, {});
    sign_.assign(n + 1, kUnknown);
    bits_known_.assign(n + 1, 1);
    for (int c = n; c >= 1; --c) {
        free_colors_.push_back(c);
    }
    designated_ = 0;
    sign_[0] = static_cast<int8_t>(initial_sign);
    for (int q = 0; q < n; ++q) {
        members_[0].push_back(q);
    }
}

int ReplayTracker::fresh_color(int sign) {
    int c = free_colors_.back();
    free_colors_.pop_back();
    members_[c].clear();
    sign_[c] = static_cast<int8_t>(sign);
    bits_known_[c] = 1;
    return c;
}

void ReplayTracker::erase(int site, int outcome) {
    int c = color_[site];
    auto &list = members_[c];
    if (list.size() == 1) {
        if (outcome != kUnknown) {
            if (sign_[c] == kUnknown) {
                sign_[c] = static_cast<int8_t>(outcome);
            } else if (sign_[c] != outcome) {
                ++contradictions_;
                sign_[c] = static_cast<int8_t>(outcome);
            }
        }
        if (c == designated_) {
            designated_ = -1;
        }
        return;
    }
    list.erase(std::find(list.begin(), list.end(), site));
    if (sign_[c] != kUnknown) {
        sign_[c] = outcome == kUnknown ? kUnknown : static_cast<int8_t>(sign_[c] * outcome);
    }
    int fresh = fresh_color(outcome);
    members_[fresh].push_back(site);
    color_[site] = fresh;
}

void ReplayTracker::merge(int edge, int outcome) {
    int i = edge;
    int j = edge + 1;
    int ci = color_[i];
    int cj = color_[j];
    if (ci == cj) {
        if (outcome != kUnknown && bits_known_[ci]) {
            int expected = (bit_[i] ^ bit_[j]) ? -1 : +1;
            if (expected != outcome) {
                ++contradictions_;
            }
        }
        return;
    }
    int winner;
    if (ci == designated_ || cj == designated_) {
        winner = designated_;
    } else {
        winner = members_[cj].size() > members_[ci].size() ? cj : ci;
    }
    int loser = winner == ci ? cj : ci;
    bool known = outcome != kUnknown && bits_known_[ci] && bits_known_[cj];
    bool invert = known && (((bit_[i] ^ bit_[j]) ? -1 : +1) != outcome);
    for (int q : members_[loser]) {
        bit_[q] ^= invert ? 1 : 0;
        color_[q] = winner;
        members_[winner].push_back(q);
    }
    members_[loser].clear();
    bits_known_[winner] = known ? 1 : 0;
    sign_[winner] = (sign_[winner] == kUnknown || sign_[loser] == kUnknown)
                        ? kUnknown
                        : static_cast<int8_t>(sign_[winner] * sign_[loser]);
    free_colors_.push_back(loser);
}

void ReplayTracker::observe_e(int site, int outcome) { erase(site, outcome); }
void ReplayTracker::hypothetical_e(int site) { erase(site, kUnknown); }
void ReplayTracker::observe_s(int edge, int outcome) { merge(edge, outcome); }
void ReplayTracker::hypothetical_s(int edge) { merge(edge, kUnknown); }

bool ReplayTracker::survived() const {
    if (designated_ < 0) {
        return false;
    }
    return !with_ancilla_ || members_[designated_].size() >= 2;
}

ReplayTracker replay(const MeasurementRecord &record, const ReplayInput &input) {
    const auto &cfg = record.config();
    int L = cfg.L;
    int parity = record.initial_parity();
    ReplayTracker tracker(L, cfg.has_ancilla(), parity == 0 ? ReplayTracker::kUnknown : parity);
    int R = record.num_rounds();
    std::vector<uint8_t> add_e(static_cast<size_t>(R) * L, 0);
    std::vector<uint8_t> add_s(static_cast<size_t>(R) * (L - 1), 0);
    if (input.added_e != nullptr) {
        for (auto s : *input.added_e) {
            add_e[static_cast<size_t>(s.time) * L + s.location] = 1;
        }
    }
    if (input.added_s != nullptr) {
        for (auto s : *input.added_s) {
            add_s[static_cast<size_t>(s.time) * (L - 1) + s.location] = 1;
        }
    }
    for (int t = 0; t < R; ++t) {
        for (int i = 0; i < L; ++i) {
            int o = record.observed_e(t, i);
            if (o != 0) {
                if (input.recorded_e) {
                    tracker.observe_e(i, o);
                }
            } else if (add_e[static_cast<size_t>(t) * L + i]) {
                tracker.hypothetical_e(i);
            }
        }
        for (int e = 0; e + 1 < L; ++e) {
            int o = record.observed_s(t, e);
            if (o != 0) {
                if (input.recorded_s) {
                    tracker.observe_s(e, o);
                }
            } else if (add_s[static_cast<size_t>(t) * (L - 1) + e]) {
                tracker.hypothetical_s(e);
            }
        }
    }
    return tracker;
}

}  // namespace ptim
