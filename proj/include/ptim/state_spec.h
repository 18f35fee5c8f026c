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

#ifndef PTIM_STATE_SPEC_H
#define PTIM_STATE_SPEC_H

#include <cstdint>
#include <optional>
#include <vector>

#include "ptim/rng.h"

namespace ptim {

enum class InitKind : uint8_t { kGhz, kClassical };

/// Initial state of a trajectory. System qubits are 0..L-1; the ancilla,
/// when present, is qubit L.
struct InitialStateSpec {
    InitKind kind = InitKind::kGhz;
    int num_system_qubits = 2;
    bool with_ancilla = false;
    /// Relative sign of |0...0> +/- |1...1> (GHZ only).
    int ghz_parity = +1;
    /// One entry per system qubit (Classical only).
    std::vector<uint8_t> classical_bits;

    static InitialStateSpec ghz(int num_system_qubits, int parity = +1, bool with_ancilla = false);
    static InitialStateSpec classical(std::vector<uint8_t> bits);

    /// Throws std::invalid_argument on contradictory fields.
    void validate() const;
    int num_qubits() const { return num_system_qubits + (with_ancilla ? 1 : 0); }
    int ancilla() const { return with_ancilla ? num_system_qubits : -1; }
};

enum class OpKind : uint8_t { kE, kS };

/// E at a site (X_i) or S at an edge (Z_i Z_{i+1}, identified by i).
struct Measurement {
    OpKind kind;
    int location;

    static Measurement e(int site) { return {OpKind::kE, site}; }
    static Measurement s(int edge) { return {OpKind::kS, edge}; }
};

/// Where a random outcome comes from: a Born draw on a stream, or a value
/// imposed by the caller (used to couple two simulators).
class OutcomeSource {
   public:
    static OutcomeSource born(Rng &rng) { return OutcomeSource(&rng, 0); }
    static OutcomeSource forced(int sign) { return OutcomeSource(nullptr, sign); }

    bool is_forced() const { return rng_ == nullptr; }
    int forced_sign() const { return forced_; }
    /// Outcome for a measurement whose result is uniformly random.
    int draw_random() { return rng_ != nullptr ? random_sign(*rng_) : forced_; }
    /// Outcome for a deterministic measurement; throws if a forced sign
    /// contradicts it.
    int check_deterministic(int expected) const;

   private:
    OutcomeSource(Rng *rng, int forced) : rng_(rng), forced_(forced) {}
    Rng *rng_;
    int forced_;
};

struct MeasurementResult {
    int outcome = +1;
    bool deterministic = false;
};

}  // namespace ptim

#endif
