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

#ifndef PTIM_SYNDROME_H
#define PTIM_SYNDROME_H

#include <compare>
#include <string>
#include <vector>

#include "ptim/matching.h"
#include "ptim/record.h"

namespace ptim {

enum class Orientation : uint8_t { kPrimal, kDual };

/// How the dual graph treats the global X-parity of the initial state.
/// kPlusParity: the parity is known and constrains the bottom of the grid.
/// kMinusParityOrAncilla: the bottom hub is tied to the boundary.
enum class DualParityMode : uint8_t { kPlusParity, kMinusParityOrAncilla };

/// A spacetime slot (round, site or edge).
struct SlotRef {
    int time = 0;
    int location = 0;
    auto operator<=>(const SlotRef &) const = default;
};

/// Maximal time interval on one column during which the column's
/// stabilizer value is only changed by crossings.
///
/// Primal: column = edge, value = Z_e Z_{e+1}, crossings are E on qubits e
/// and e+1, and the window spans E-slots [t_begin, t_end].
/// Dual: column = qubit, value = X_i, crossings are S on edges i-1 and i,
/// and the window spans S-slots [t_begin, t_end] (possibly empty).
struct Window {
    int column = 0;
    int t_begin = 0;
    int t_end = -1;
    bool defect = false;
    /// Open at the top (or otherwise unconstrained): merged into the boundary.
    bool free = false;
};

/// Link between two windows. cost 0: a recorded measurement sits there;
/// cost 1: a measurement may have gone unrecorded there.
struct Crossing {
    SlotRef slot;
    int a = 0;
    int b = 0;
    int cost = 0;
};

struct SpacetimeGrid {
    Orientation orientation = Orientation::kPrimal;
    int columns = 0;
    int rounds = 0;
    std::vector<Window> windows;
    /// Sorted by (time, location).
    std::vector<Crossing> crossings;
    /// Pseudo-window standing for the side boundaries and open tops.
    int boundary = -1;
    /// Dual only: pseudo-window joining all bottom windows, or -1.
    int hub = -1;

    /// One line per window and crossing.
    std::string dump() const;
};

/// Grid, contraction and matching graph for one orientation.
///
/// Zero-cost crossings are contracted with union-find; components with odd
/// defect count become matching nodes. Node i < k is a defect component and
/// node k + i its private boundary copy.
struct SyndromeProblem {
    SpacetimeGrid grid;
    SyndromeGraph graph;
    std::vector<int> component_of_window;
    int num_components = 0;
    int boundary_component = -1;
    std::vector<int> defect_components;
    /// Per defect: BFS parent crossing and parent component for every
    /// component (-1 where unreached or at the root).
    std::vector<std::vector<int>> parent_crossing;
    std::vector<std::vector<int>> parent_component;
    std::vector<std::vector<int>> distance;

    int num_defects() const { return static_cast<int>(defect_components.size()); }
    /// Unit-cost slots on the witness path of matched node pair (u, v).
    std::vector<SlotRef> witness(int u, int v) const;
};

SpacetimeGrid build_primal_grid(const MeasurementRecord &record);
SpacetimeGrid build_dual_grid(const MeasurementRecord &record, DualParityMode mode);

SyndromeProblem build_problem(SpacetimeGrid grid);
inline SyndromeProblem build_primal_graph(const MeasurementRecord &record) {
    return build_problem(build_primal_grid(record));
}
inline SyndromeProblem build_dual_graph(const MeasurementRecord &record, DualParityMode mode) {
    return build_problem(build_dual_grid(record, mode));
}

/// Union of unit-cost slots over every matched pair's witness, sorted.
std::vector<SlotRef> matched_slots(const SyndromeProblem &problem, const Matching &matching);

}  // namespace ptim

#endif
