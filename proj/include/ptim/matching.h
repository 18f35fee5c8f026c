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

#ifndef PTIM_MATCHING_H
#define PTIM_MATCHING_H

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ptim {

enum class NodeKind : uint8_t { kDefect, kBoundary };

struct SyndromeNode {
    NodeKind kind = NodeKind::kDefect;
    /// Defect: contracted grid component. Boundary: index of the defect
    /// owning this private boundary copy.
    int ref = -1;
};

/// Complete-or-partial weighted graph on which matching runs. Weights are
/// non-negative integers; kNoEdge marks an absent edge.
class SyndromeGraph {
   public:
    static constexpr int kNoEdge = -1;

    SyndromeGraph() = default;
    explicit SyndromeGraph(int num_nodes);

    int num_nodes() const { return n_; }
    int weight(int i, int j) const { return w_[static_cast<size_t>(i) * n_ + j]; }
    bool has_edge(int i, int j) const { return weight(i, j) != kNoEdge; }
    void set_weight(int i, int j, int w);

    std::vector<SyndromeNode> nodes;

    /// One "u v w" line per edge, u < v.
    std::string dump() const;

   private:
    int n_ = 0;
    std::vector<int> w_;
};

struct Matching {
    /// Sorted pairs (u, v) with u < v, covering every node once.
    std::vector<std::pair<int, int>> pairs;
    int64_t total_weight = 0;
};

/// Exact minimum-weight perfect matching (Edmonds' blossom algorithm).
/// Throws std::runtime_error if the graph has no perfect matching.
Matching mwpm_exact(const SyndromeGraph &g);

/// Exhaustive minimum over all perfect matchings; ties go to the
/// lexicographically smallest sorted pair list. At most 12 nodes.
Matching mwpm_bruteforce(const SyndromeGraph &g);

/// Maximum-weight matching on a general graph with integer weights, in the
/// edge-list form (u, v, w). With max_cardinality the matching is maximum
/// among maximum-cardinality matchings. Returns mate[v] or -1.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<std::array<int64_t, 3>> &edges,
                                     bool max_cardinality);

}  // namespace ptim

#endif
