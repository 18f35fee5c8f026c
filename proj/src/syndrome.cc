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

#include "ptim/syndrome.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ptim {

namespace {

constexpr int kUnreached = -1;

// Splits one column into windows separated by the given measurement times.
// `shift` is 1 for the primal grid (window after the measurement at t starts
// at E-slot t+1) and 0 for the dual grid (it starts at S-slot t).
void split_column(int column, const std::vector<std::pair<int, int>> &measured, int rounds, int shift,
                  int initial_value, std::vector<Window> &windows, std::vector<int> &window_at,
                  std::vector<int> *bottom_ids) {
    int begin = 0;
    int previous = initial_value;
    for (size_t j = 0; j <= measured.size(); ++j) {
        Window w;
        w.column = column;
        w.t_begin = begin;
        if (j < measured.size()) {
            auto [t, outcome] = measured[j];
            w.t_end = t + shift - 1;
            w.defect = previous != 0 && outcome != previous;
            previous = outcome;
            begin = t + shift;
        } else {
            w.t_end = rounds - 1;
            w.free = true;
        }
        int id = static_cast<int>(windows.size());
        if (j == 0 && bottom_ids != nullptr) {
            bottom_ids->push_back(id);
        }
        for (int t = std::max(w.t_begin, 0); t <= w.t_end; ++t) {
            window_at[t] = id;
        }
        windows.push_back(w);
    }
}

struct UnionFind {
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<int> parent;
};

}  // namespace

SpacetimeGrid build_primal_grid(const MeasurementRecord &record) {
    SpacetimeGrid grid;
    grid.orientation = Orientation::kPrimal;
    int L = record.num_system_qubits();
    int R = record.num_rounds();
    grid.columns = L - 1;
    grid.rounds = R;
    std::vector<std::vector<int>> window_at(L - 1, std::vector<int>(R, -1));
    for (int e = 0; e + 1 < L; ++e) {
        std::vector<std::pair<int, int>> measured;
        for (int t = 0; t < R; ++t) {
            if (int s = record.observed_s(t, e); s != 0) {
                measured.emplace_back(t, s);
            }
        }
        // Every initial state in use has Z_e Z_{e+1} = +1.
        split_column(e, measured, R, 1, +1, grid.windows, window_at[e], nullptr);
    }
    grid.boundary = static_cast<int>(grid.windows.size());
    grid.windows.push_back(Window{-1, 0, R - 1, false, true});
    for (int t = 0; t < R; ++t) {
        for (int i = 0; i < L; ++i) {
            int cost;
            if (record.observed_e(t, i) != 0) {
                cost = 0;
            } else if (record.hidden_e_possible(t, i)) {
                cost = 1;
            } else {
                continue;
            }
            int a = i == 0 ? grid.boundary : window_at[i - 1][t];
            int b = i == L - 1 ? grid.boundary : window_at[i][t];
            grid.crossings.push_back({{t, i}, a, b, cost});
        }
    }
    return grid;
}

SpacetimeGrid build_dual_grid(const MeasurementRecord &record, DualParityMode mode) {
    SpacetimeGrid grid;
    grid.orientation = Orientation::kDual;
    int L = record.num_system_qubits();
    int R = record.num_rounds();
    grid.columns = L;
    grid.rounds = R;
    std::vector<std::vector<int>> window_at(L, std::vector<int>(R, -1));
    std::vector<int> bottoms;
    for (int i = 0; i < L; ++i) {
        std::vector<std::pair<int, int>> measured;
        for (int t = 0; t < R; ++t) {
            if (int o = record.observed_e(t, i); o != 0) {
                measured.emplace_back(t, o);
            }
        }
        // The bottom window compares the first outcome against +1; the
        // hub collects the product of those first outcomes.
        split_column(i, measured, R, 0, +1, grid.windows, window_at[i], &bottoms);
    }
    grid.boundary = static_cast<int>(grid.windows.size());
    grid.windows.push_back(Window{-1, 0, R - 1, false, true});
    grid.hub = static_cast<int>(grid.windows.size());
    Window hub{-2, 0, -1, false, false};
    int parity = record.initial_parity();
    if (mode == DualParityMode::kMinusParityOrAncilla || record.has_ancilla() || parity == 0) {
        hub.free = true;
    } else {
        hub.defect = parity == -1;
    }
    grid.windows.push_back(hub);
    for (int i = 0; i < L; ++i) {
        grid.crossings.push_back({{-1, i}, grid.hub, bottoms[i], 0});
    }
    for (int t = 0; t < R; ++t) {
        for (int e = 0; e + 1 < L; ++e) {
            int cost;
            if (record.observed_s(t, e) != 0) {
                cost = 0;
            } else if (record.hidden_s_possible(t, e)) {
                cost = 1;
            } else {
                continue;
            }
            grid.crossings.push_back({{t, e}, window_at[e][t], window_at[e + 1][t], cost});
        }
    }
    return grid;
}

std::string SpacetimeGrid::dump() const {
    std::ostringstream out;
    out << (orientation == Orientation::kPrimal ? "primal" : "dual") << ' ' << columns << ' ' << rounds << '\n';
    for (size_t w = 0; w < windows.size(); ++w) {
        const auto &win = windows[w];
        out << "W " << w << ' ' << win.column << ' ' << win.t_begin << ' ' << win.t_end << ' ' << int(win.defect)
            << ' ' << int(win.free) << '\n';
    }
    for (const auto &c : crossings) {
        out << "C " << c.slot.time << ' ' << c.slot.location << ' ' << c.a << ' ' << c.b << ' ' << c.cost << '\n';
    }
    return out.str();
}

SyndromeProblem build_problem(SpacetimeGrid grid) {
    SyndromeProblem prob;
    int nw = static_cast<int>(grid.windows.size());
    UnionFind uf(nw);
    for (int w = 0; w < nw; ++w) {
        if (grid.windows[w].free) {
            uf.unite(w, grid.boundary);
        }
    }
    for (const auto &c : grid.crossings) {
        if (c.cost == 0) {
            uf.unite(c.a, c.b);
        }
    }
    std::vector<int> label(nw, -1);
    prob.component_of_window.assign(nw, -1);
    int ncomp = 0;
    for (int w = 0; w < nw; ++w) {
        int root = uf.find(w);
        if (label[root] < 0) {
            label[root] = ncomp++;
        }
        prob.component_of_window[w] = label[root];
    }
    prob.num_components = ncomp;
    prob.boundary_component = prob.component_of_window[grid.boundary];
    std::vector<uint8_t> charge(ncomp, 0);
    for (int w = 0; w < nw; ++w) {
        if (grid.windows[w].defect) {
            charge[prob.component_of_window[w]] ^= 1;
        }
    }
    for (int c = 0; c < ncomp; ++c) {
        if (charge[c] && c != prob.boundary_component) {
            prob.defect_components.push_back(c);
        }
    }
    int k = prob.num_defects();
    prob.graph = SyndromeGraph(2 * k);
    if (k > 0) {
        // Adjacency over components through unit-cost crossings, kept in
        // crossing order so BFS trees are reproducible.
        std::vector<std::vector<std::pair<int, int>>> adj(ncomp);
        for (int x = 0; x < static_cast<int>(grid.crossings.size()); ++x) {
            const auto &c = grid.crossings[x];
            if (c.cost != 1) {
                continue;
            }
            int ca = prob.component_of_window[c.a];
            int cb = prob.component_of_window[c.b];
            if (ca != cb) {
                adj[ca].emplace_back(cb, x);
                adj[cb].emplace_back(ca, x);
            }
        }
        prob.parent_crossing.assign(k, std::vector<int>(ncomp, -1));
        prob.parent_component.assign(k, std::vector<int>(ncomp, -1));
        prob.distance.assign(k, std::vector<int>(ncomp, kUnreached));
        for (int d = 0; d < k; ++d) {
            auto &dist = prob.distance[d];
            auto &pc = prob.parent_crossing[d];
            auto &pp = prob.parent_component[d];
            std::deque<int> queue;
            dist[prob.defect_components[d]] = 0;
            queue.push_back(prob.defect_components[d]);
            while (!queue.empty()) {
                int c = queue.front();
                queue.pop_front();
                for (auto [next, x] : adj[c]) {
                    if (dist[next] == kUnreached) {
                        dist[next] = dist[c] + 1;
                        pc[next] = x;
                        pp[next] = c;
                        queue.push_back(next);
                    }
                }
            }
        }
        for (int i = 0; i < k; ++i) {
            prob.graph.nodes[i] = {NodeKind::kDefect, prob.defect_components[i]};
            prob.graph.nodes[k + i] = {NodeKind::kBoundary, i};
            for (int j = i + 1; j < k; ++j) {
                int w = prob.distance[i][prob.defect_components[j]];
                if (w != kUnreached) {
                    prob.graph.set_weight(i, j, w);
                }
                prob.graph.set_weight(k + i, k + j, 0);
            }
            int wb = prob.distance[i][prob.boundary_component];
            if (wb != kUnreached) {
                prob.graph.set_weight(i, k + i, wb);
            }
        }
    }
    prob.grid = std::move(grid);
    return prob;
}

std::vector<SlotRef> SyndromeProblem::witness(int u, int v) const {
    int k = num_defects();
    if (u > v) {
        std::swap(u, v);
    }
    if (u >= k) {
        return {};
    }
    int target;
    if (v < k) {
        target = defect_components[v];
    } else if (v == u + k) {
        target = boundary_component;
    } else {
        throw std::invalid_argument("witness requested for a non-edge");
    }
    std::vector<SlotRef> slots;
    int c = target;
    while (c != defect_components[u]) {
        int x = parent_crossing[u][c];
        if (x < 0) {
            throw std::logic_error("witness target unreachable");
        }
        slots.push_back(grid.crossings[x].slot);
        c = parent_component[u][c];
    }
    return slots;
}

std::vector<SlotRef> matched_slots(const SyndromeProblem &problem, const Matching &matching) {
    std::vector<SlotRef> slots;
    for (auto [u, v] : matching.pairs) {
        auto w = problem.witness(u, v);
        slots.insert(slots.end(), w.begin(), w.end());
    }
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    return slots;
}

}  // namespace ptim
