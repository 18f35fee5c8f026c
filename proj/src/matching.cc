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

#include "ptim/matching.h"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ptim {

SyndromeGraph::SyndromeGraph(int num_nodes)
    : nodes(num_nodes), n_(num_nodes), w_(static_cast<size_t>(num_nodes) * num_nodes, kNoEdge) {}

void SyndromeGraph::set_weight(int i, int j, int w) {
    if (i == j) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    if (w < 0 && w != kNoEdge) {
        throw std::invalid_argument("edge weights must be non-negative");
    }
    w_[static_cast<size_t>(i) * n_ + j] = w;
    w_[static_cast<size_t>(j) * n_ + i] = w;
}

std::string SyndromeGraph::dump() const {
    std::ostringstream out;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (has_edge(i, j)) {
                out << i << ' ' << j << ' ' << weight(i, j) << '\n';
            }
        }
    }
    return out.str();
}

namespace {

// Port of Joris van Rantwijk's mwmatching.py (public domain). Endpoint
// numbering: edge k has endpoints 2k (u) and 2k+1 (v).
class BlossomMatcher {
   public:
    BlossomMatcher(int nvertex, const std::vector<std::array<int64_t, 3>> &edges, bool maxcardinality)
        : nv_(nvertex), edges_(edges), maxcard_(maxcardinality) {}

    std::vector<int> run();

   private:
    using Vec = std::vector<int>;

    int64_t slack(int k) const {
        const auto &e = edges_[k];
        return dual_[e[0]] + dual_[e[1]] - 2 * e[2];
    }
    int endpoint(int p) const { return static_cast<int>(edges_[p / 2][p % 2]); }

    void leaves(int b, Vec &out) const {
        if (b < nv_) {
            out.push_back(b);
            return;
        }
        for (int t : childs_[b]) {
            leaves(t, out);
        }
    }
    Vec leaves(int b) const {
        Vec out;
        leaves(b, out);
        return out;
    }

    static int wrap(int j, int size) { return ((j % size) + size) % size; }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int nv_;
    const std::vector<std::array<int64_t, 3>> &edges_;
    bool maxcard_;
    std::vector<Vec> neighbend_;
    Vec mate_, label_, labelend_, inblossom_, parent_, base_, bestedge_, unused_;
    std::vector<Vec> childs_, endps_, bestedges_;
    std::vector<uint8_t> has_bestedges_;
    std::vector<int64_t> dual_;
    std::vector<uint8_t> allow_;
    Vec queue_;
};

void BlossomMatcher::assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        int base = base_[b];
        assign_label(endpoint(mate_[base]), 1, mate_[base] ^ 1);
    }
}

int BlossomMatcher::scan_blossom(int v, int w) {
    Vec path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = base_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = endpoint(labelend_[b]);
            b = inblossom_[v];
            v = endpoint(labelend_[b]);
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[b] = 1;
    }
    return base;
}

void BlossomMatcher::add_blossom(int base, int k) {
    int v = static_cast<int>(edges_[k][0]);
    int w = static_cast<int>(edges_[k][1]);
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unused_.back();
    unused_.pop_back();
    base_[b] = base;
    parent_[b] = -1;
    parent_[bb] = b;
    Vec path;
    Vec endps;
    while (bv != bb) {
        parent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = endpoint(labelend_[bv]);
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        parent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = endpoint(labelend_[bw]);
        bw = inblossom_[w];
    }
    childs_[b] = std::move(path);
    endps_[b] = std::move(endps);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2) {
            queue_.push_back(leaf);
        }
        inblossom_[leaf] = b;
    }
    Vec bestedgeto(2 * nv_, -1);
    for (int sub : childs_[b]) {
        std::vector<Vec> nblists;
        if (!has_bestedges_[sub]) {
            for (int leaf : leaves(sub)) {
                Vec list;
                for (int p : neighbend_[leaf]) {
                    list.push_back(p / 2);
                }
                nblists.push_back(std::move(list));
            }
        } else {
            nblists.push_back(bestedges_[sub]);
        }
        for (const auto &nblist : nblists) {
            for (int e : nblist) {
                int i = static_cast<int>(edges_[e][0]);
                int j = static_cast<int>(edges_[e][1]);
                if (inblossom_[j] == b) {
                    std::swap(i, j);
                }
                int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = e;
                }
            }
        }
        bestedges_[sub].clear();
        has_bestedges_[sub] = 0;
        bestedge_[sub] = -1;
    }
    bestedges_[b].clear();
    for (int e : bestedgeto) {
        if (e != -1) {
            bestedges_[b].push_back(e);
        }
    }
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int e : bestedges_[b]) {
        if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) {
            bestedge_[b] = e;
        }
    }
}

void BlossomMatcher::expand_blossom(int b, bool endstage) {
    for (int s : Vec(childs_[b])) {
        parent_[s] = -1;
        if (s < nv_) {
            inblossom_[s] = s;
        } else if (endstage && dual_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) {
                inblossom_[leaf] = s;
            }
        }
    }
    if (!endstage && label_[b] == 2) {
        const Vec &ch = childs_[b];
        const Vec &ep = endps_[b];
        int size = static_cast<int>(ch.size());
        int entrychild = inblossom_[endpoint(labelend_[b] ^ 1)];
        int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int jstep;
        int endptrick;
        if (j & 1) {
            j -= size;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[endpoint(p ^ 1)] = 0;
            label_[endpoint(ep[wrap(j - endptrick, size)] ^ endptrick ^ 1)] = 0;
            assign_label(endpoint(p ^ 1), 2, p);
            allow_[ep[wrap(j - endptrick, size)] / 2] = 1;
            j += jstep;
            p = ep[wrap(j - endptrick, size)] ^ endptrick;
            allow_[p / 2] = 1;
            j += jstep;
        }
        int bv = ch[wrap(j, size)];
        label_[endpoint(p ^ 1)] = label_[bv] = 2;
        labelend_[endpoint(p ^ 1)] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (ch[wrap(j, size)] != entrychild) {
            bv = ch[wrap(j, size)];
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int leaf : leaves(bv)) {
                if (label_[leaf] != 0) {
                    found = leaf;
                    break;
                }
            }
            if (found != -1) {
                label_[found] = 0;
                label_[endpoint(mate_[base_[bv]])] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    base_[b] = -1;
    bestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void BlossomMatcher::augment_blossom(int b, int v) {
    int t = v;
    while (parent_[t] != b) {
        t = parent_[t];
    }
    if (t >= nv_) {
        augment_blossom(t, v);
    }
    Vec &ch = childs_[b];
    Vec &ep = endps_[b];
    int size = static_cast<int>(ch.size());
    int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
        j -= size;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = ch[wrap(j, size)];
        int p = ep[wrap(j - endptrick, size)] ^ endptrick;
        if (t >= nv_) {
            augment_blossom(t, endpoint(p));
        }
        j += jstep;
        t = ch[wrap(j, size)];
        if (t >= nv_) {
            augment_blossom(t, endpoint(p ^ 1));
        }
        mate_[endpoint(p)] = p ^ 1;
        mate_[endpoint(p ^ 1)] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    base_[b] = base_[ch[0]];
}

void BlossomMatcher::augment_matching(int k) {
    int v = static_cast<int>(edges_[k][0]);
    int w = static_cast<int>(edges_[k][1]);
    for (auto [s, p] : {std::pair<int, int>{v, 2 * k + 1}, std::pair<int, int>{w, 2 * k}}) {
        while (true) {
            int bs = inblossom_[s];
            if (bs >= nv_) {
                augment_blossom(bs, s);
            }
            mate_[s] = p;
            if (labelend_[bs] == -1) {
                break;
            }
            int t = endpoint(labelend_[bs]);
            int bt = inblossom_[t];
            s = endpoint(labelend_[bt]);
            int j = endpoint(labelend_[bt] ^ 1);
            if (bt >= nv_) {
                augment_blossom(bt, j);
            }
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> BlossomMatcher::run() {
    int nedge = static_cast<int>(edges_.size());
    if (nedge == 0 || nv_ == 0) {
        return Vec(nv_, -1);
    }
    int64_t maxweight = 0;
    for (const auto &e : edges_) {
        maxweight = std::max(maxweight, e[2]);
    }
    neighbend_.assign(nv_, {});
    for (int k = 0; k < nedge; ++k) {
        neighbend_[edges_[k][0]].push_back(2 * k + 1);
        neighbend_[edges_[k][1]].push_back(2 * k);
    }
    mate_.assign(nv_, -1);
    label_.assign(2 * nv_, 0);
    labelend_.assign(2 * nv_, -1);
    inblossom_.resize(nv_);
    for (int i = 0; i < nv_; ++i) {
        inblossom_[i] = i;
    }
    parent_.assign(2 * nv_, -1);
    childs_.assign(2 * nv_, {});
    base_.assign(2 * nv_, -1);
    for (int i = 0; i < nv_; ++i) {
        base_[i] = i;
    }
    endps_.assign(2 * nv_, {});
    bestedge_.assign(2 * nv_, -1);
    bestedges_.assign(2 * nv_, {});
    has_bestedges_.assign(2 * nv_, 0);
    unused_.clear();
    for (int b = nv_; b < 2 * nv_; ++b) {
        unused_.push_back(b);
    }
    dual_.assign(2 * nv_, 0);
    for (int i = 0; i < nv_; ++i) {
        dual_[i] = maxweight;
    }
    allow_.assign(nedge, 0);

    for (int stage = 0; stage < nv_; ++stage) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = nv_; b < 2 * nv_; ++b) {
            bestedges_[b].clear();
            has_bestedges_[b] = 0;
        }
        std::fill(allow_.begin(), allow_.end(), 0);
        queue_.clear();
        for (int v = 0; v < nv_; ++v) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                assign_label(v, 1, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    int k = p / 2;
                    int w = endpoint(p);
                    if (inblossom_[v] == inblossom_[w]) {
                        continue;
                    }
                    int64_t kslack = 0;
                    if (!allow_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) {
                            allow_[k] = 1;
                        }
                    }
                    if (allow_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                            bestedge_[b] = k;
                        }
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                            bestedge_[w] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }
            int deltatype = -1;
            int64_t delta = 0;
            int deltaedge = -1;
            int deltablossom = -1;
            if (!maxcard_) {
                deltatype = 1;
                delta = *std::min_element(dual_.begin(), dual_.begin() + nv_);
            }
            for (int v = 0; v < nv_; ++v) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    int64_t d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * nv_; ++b) {
                if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    int64_t d = slack(bestedge_[b]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = nv_; b < 2 * nv_; ++b) {
                if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && (deltatype == -1 || dual_[b] < delta)) {
                    delta = dual_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<int64_t>(0, *std::min_element(dual_.begin(), dual_.begin() + nv_));
            }
            for (int v = 0; v < nv_; ++v) {
                if (label_[inblossom_[v]] == 1) {
                    dual_[v] -= delta;
                } else if (label_[inblossom_[v]] == 2) {
                    dual_[v] += delta;
                }
            }
            for (int b = nv_; b < 2 * nv_; ++b) {
                if (base_[b] >= 0 && parent_[b] == -1) {
                    if (label_[b] == 1) {
                        dual_[b] += delta;
                    } else if (label_[b] == 2) {
                        dual_[b] -= delta;
                    }
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allow_[deltaedge] = 1;
                int i = static_cast<int>(edges_[deltaedge][0]);
                int j = static_cast<int>(edges_[deltaedge][1]);
                if (label_[inblossom_[i]] == 0) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allow_[deltaedge] = 1;
                queue_.push_back(static_cast<int>(edges_[deltaedge][0]));
            } else {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
            if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    Vec result(nv_, -1);
    for (int v = 0; v < nv_; ++v) {
        if (mate_[v] >= 0) {
            result[v] = endpoint(mate_[v]);
        }
    }
    return result;
}

Matching from_mates(const SyndromeGraph &g, const std::vector<int> &mate) {
    Matching m;
    for (int v = 0; v < g.num_nodes(); ++v) {
        if (mate[v] < 0) {
            throw std::runtime_error("syndrome graph has no perfect matching");
        }
        if (v < mate[v]) {
            m.pairs.emplace_back(v, mate[v]);
            m.total_weight += g.weight(v, mate[v]);
        }
    }
    return m;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, const std::vector<std::array<int64_t, 3>> &edges,
                                     bool max_cardinality) {
    for (const auto &e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= num_vertices || e[1] >= num_vertices || e[0] == e[1]) {
            throw std::invalid_argument("invalid edge in max_weight_matching");
        }
    }
    return BlossomMatcher(num_vertices, edges, max_cardinality).run();
}

Matching mwpm_exact(const SyndromeGraph &g) {
    int n = g.num_nodes();
    if (n % 2 != 0) {
        throw std::runtime_error("syndrome graph has an odd number of nodes");
    }
    if (n == 0) {
        return {};
    }
    int64_t wmax = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g.has_edge(i, j)) {
                wmax = std::max<int64_t>(wmax, g.weight(i, j));
            }
        }
    }
    // Maximum cardinality first, then maximum of 2 (wmax + 1 - w): the
    // doubling keeps every dual variable integral.
    std::vector<std::array<int64_t, 3>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g.has_edge(i, j)) {
                edges.push_back({i, j, 2 * (wmax + 1 - g.weight(i, j))});
            }
        }
    }
    return from_mates(g, max_weight_matching(n, edges, true));
}

Matching mwpm_bruteforce(const SyndromeGraph &g) {
    int n = g.num_nodes();
    if (n > 12) {
        throw std::invalid_argument("mwpm_bruteforce supports at most 12 nodes");
    }
    if (n % 2 != 0) {
        throw std::runtime_error("syndrome graph has an odd number of nodes");
    }
    Matching best;
    bool found = false;
    std::vector<std::pair<int, int>> current;
    std::vector<uint8_t> used(n, 0);
    int64_t weight = 0;
    // Recursion pairs the lowest free node first, so pair lists come out sorted
    // and the enumeration order is lexicographic; strict improvement keeps the
    // first (smallest) among ties.
    auto recurse = [&](auto &&self) -> void {
        int first = -1;
        for (int v = 0; v < n; ++v) {
            if (!used[v]) {
                first = v;
                break;
            }
        }
        if (first < 0) {
            if (!found || weight < best.total_weight) {
                best.pairs = current;
                best.total_weight = weight;
                found = true;
            }
            return;
        }
        used[first] = 1;
        for (int v = first + 1; v < n; ++v) {
            if (used[v] || !g.has_edge(first, v)) {
                continue;
            }
            used[v] = 1;
            current.emplace_back(first, v);
            weight += g.weight(first, v);
            self(self);
            weight -= g.weight(first, v);
            current.pop_back();
            used[v] = 0;
        }
        used[first] = 0;
    };
    recurse(recurse);
    if (!found) {
        throw std::runtime_error("syndrome graph has no perfect matching");
    }
    return best;
}

}  // namespace ptim
