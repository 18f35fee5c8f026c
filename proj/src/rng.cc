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

#include "ptim/rng.h"

namespace ptim {

Rng make_stream(uint64_t master_seed, uint64_t sample_index, Stream stream) {
    std::seed_seq seq{
        static_cast<uint32_t>(master_seed),
        static_cast<uint32_t>(master_seed >> 32),
        static_cast<uint32_t>(sample_index),
        static_cast<uint32_t>(sample_index >> 32),
        static_cast<uint32_t>(stream),
    };
    return Rng(seq);
}

}  // namespace ptim
