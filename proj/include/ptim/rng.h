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

#ifndef PTIM_RNG_H
#define PTIM_RNG_H

#include <cstdint>
#include <random>

namespace ptim {

using Rng = std::mt19937_64;

/// Independent random streams used by a single sample. Each stream is a
/// separate engine so that, e.g., toggling shadow diagnostics never shifts
/// the evolution draws.
enum class Stream : uint32_t {
    kEvolution = 1,
    kNoise = 2,
    kShadow = 3,
    kDecoder = 4,
    kBootstrap = 5,
};

/// Engine seeded from (master_seed, sample_index, stream) through
/// std::seed_seq, which is fully specified by the standard.
Rng make_stream(uint64_t master_seed, uint64_t sample_index, Stream stream);

/// Uniform double in [0, 1) using exactly one engine draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Bernoulli(prob) using exactly one engine draw.
inline bool bernoulli(Rng &rng, double prob) {
    return uniform01(rng) < prob;
}

/// Fair +1/-1 using exactly one engine draw.
inline int random_sign(Rng &rng) {
    return (rng() >> 63) ? -1 : +1;
}

/// Uniform integer in [0, n) using exactly one engine draw.
inline int uniform_index(Rng &rng, int n) {
    return static_cast<int>(uniform01(rng) * n);
}

}  // namespace ptim

#endif
