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

#include "ptim/harness.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "ptim/correction.h"
#include "ptim/protocols.h"

namespace ptim {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct EstimatorSlot {
    std::string name;
    std::optional<double> epsilon;
};

std::vector<EstimatorSlot> estimator_slots(const ScanConfig &cfg) {
    switch (cfg.protocol) {
        case ProtocolKind::kHalfChain:
            return {{"S_half", {}}};
        case ProtocolKind::kAncilla:
            return {{"S_a", {}}};
        case ProtocolKind::kDecoding:
            return {{"R", {}}, {"survival", {}}};
        case ProtocolKind::kShadow: {
            std::vector<EstimatorSlot> slots{{"S_a", {}}};
            const char *families[] = {"upper", "lower", "naive_upper"};
            for (const char *family : families) {
                if (cfg.naive_only && std::string(family) != "naive_upper") {
                    continue;
                }
                for (double eps : cfg.epsilon_grid.values) {
                    slots.push_back({family, eps});
                }
            }
            return slots;
        }
    }
    return {};
}

// Fills `out` with one sample's estimator values in slot order.
void run_sample(const ScanConfig &scan, const ProtocolConfig &cfg, double *out) {
    switch (cfg.protocol) {
        case ProtocolKind::kHalfChain:
            out[0] = protocol_halfchain(cfg).half_chain_entropy;
            return;
        case ProtocolKind::kAncilla:
            out[0] = protocol_ancilla(cfg).ancilla_entropy;
            return;
        case ProtocolKind::kDecoding: {
            DecodingSample s = protocol_decoding(cfg);
            Rng rng = make_stream(cfg.master_seed, cfg.sample_index, Stream::kDecoder);
            CorrectionPattern c = decode(s.record, rng);
            out[0] = decoding_correlation(s.encoded_bit, c, s.z_readout);
            out[1] = s.survived ? 1.0 : 0.0;
            return;
        }
        case ProtocolKind::kShadow: {
            ShadowSample s = protocol_shadow(cfg);
            ShadowOutcome shadow{{s.basis_ancilla, s.basis_last}, {s.outcome_ancilla, s.outcome_last}};
            const auto &grid = scan.epsilon_grid;
            size_t ne = grid.values.size();
            size_t k = 0;
            out[k++] = s.ancilla_entropy;
            if (!scan.naive_only) {
                auto ent = sample_shadow_entropies(shadow, predict_state(s.record), grid);
                for (size_t e = 0; e < ne; ++e) {
                    out[k + e] = ent.single[e];
                    out[k + ne + e] = ent.single[e] - ent.pair[e];
                }
                k += 2 * ne;
            }
            auto naive = sample_shadow_entropies(shadow, predict_state_naive(s.record), grid);
            for (size_t e = 0; e < ne; ++e) {
                out[k + e] = naive.single[e];
            }
            return;
        }
    }
}

}  // namespace

void ScanConfig::validate() const {
    if (p_grid.empty() || eta_list.empty() || L_list.empty()) {
        throw std::invalid_argument("p grid, eta list and L list must be non-empty");
    }
    if (samples < 1) {
        throw std::invalid_argument("samples must be >= 1");
    }
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("p values must lie in [0, 1]");
        }
    }
    for (double eta : eta_list) {
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw std::invalid_argument("eta values must lie in [0, 1]");
        }
    }
    for (int L : L_list) {
        ProtocolConfig::make(protocol, L, 0.5, 0.0).validate();
        if (T && *T < 1) {
            throw std::invalid_argument("T must be >= 1");
        }
    }
    if (workers < 0) {
        throw std::invalid_argument("workers must be >= 0");
    }
    if (protocol == ProtocolKind::kShadow) {
        epsilon_grid.validate();
    }
}

std::vector<double> default_p_grid() {
    std::set<long> milli;
    for (int i = 0; i <= 20; ++i) {
        milli.insert(300 + 20 * i);
    }
    for (int i = 0; i <= 8; ++i) {
        milli.insert(460 + 10 * i);
    }
    std::vector<double> grid;
    for (long m : milli) {
        grid.push_back(m / 1000.0);
    }
    return grid;
}

uint64_t point_seed(uint64_t master_seed, int L, double p, double eta) {
    uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ static_cast<uint64_t>(L));
    h = splitmix64(h ^ std::bit_cast<uint64_t>(p));
    h = splitmix64(h ^ std::bit_cast<uint64_t>(eta));
    return h;
}

std::vector<std::string> estimator_names(const ScanConfig &cfg) {
    std::vector<std::string> names;
    for (const auto &slot : estimator_slots(cfg)) {
        if (std::find(names.begin(), names.end(), slot.name) == names.end()) {
            names.push_back(slot.name);
        }
    }
    return names;
}

Aggregate run_scan(const ScanConfig &cfg) {
    cfg.validate();
    auto slots = estimator_slots(cfg);
    size_t ns = slots.size();
    int workers = cfg.workers > 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    Aggregate agg;
    std::vector<double> values;
    for (int L : cfg.L_list) {
        int T = cfg.T_for(L);
        for (double eta : cfg.eta_list) {
            for (double p : cfg.p_grid) {
                ProtocolConfig base = ProtocolConfig::make(cfg.protocol, L, p, eta);
                base.T = T;
                base.master_seed = point_seed(cfg.seed, L, p, eta);
                values.assign(static_cast<size_t>(cfg.samples) * ns, 0.0);
                std::atomic<int> next{0};
                std::exception_ptr error;
                std::mutex error_mutex;
                auto work = [&]() {
                    while (true) {
                        int s = next.fetch_add(1);
                        if (s >= cfg.samples) {
                            return;
                        }
                        try {
                            ProtocolConfig pc = base;
                            pc.sample_index = static_cast<uint64_t>(s);
                            run_sample(cfg, pc, values.data() + static_cast<size_t>(s) * ns);
                        } catch (...) {
                            std::lock_guard<std::mutex> lock(error_mutex);
                            if (!error) {
                                error = std::current_exception();
                            }
                            next.store(cfg.samples);
                        }
                    }
                };
                int nthreads = std::min(workers, cfg.samples);
                if (nthreads <= 1) {
                    work();
                } else {
                    std::vector<std::thread> pool;
                    for (int w = 0; w < nthreads; ++w) {
                        pool.emplace_back(work);
                    }
                    for (auto &th : pool) {
                        th.join();
                    }
                }
                if (error) {
                    std::rethrow_exception(error);
                }
                auto emit = [&](const std::string &name, std::optional<double> eps, MeanSE m) {
                    agg.rows.push_back({cfg.protocol, L, T, p, eta, name, eps, m.mean, m.se, m.n, cfg.seed});
                };
                std::vector<double> column(cfg.samples);
                std::vector<std::pair<std::string, std::vector<MeanSE>>> families;
                for (size_t j = 0; j < ns; ++j) {
                    for (int s = 0; s < cfg.samples; ++s) {
                        column[s] = values[static_cast<size_t>(s) * ns + j];
                    }
                    MeanSE m = mean_se(column);
                    emit(slots[j].name, slots[j].epsilon, m);
                    if (slots[j].epsilon) {
                        if (families.empty() || families.back().first != slots[j].name) {
                            families.emplace_back(slots[j].name, std::vector<MeanSE>{});
                        }
                        families.back().second.push_back(m);
                    }
                }
                for (const auto &[name, curves] : families) {
                    MeanSE env = name == "lower" ? max_over(curves) : min_over(curves);
                    emit(name + "_envelope", std::nullopt, env);
                }
            }
        }
    }
    return agg;
}

std::vector<CurvePoint> Aggregate::curve(const std::string &estimator, int L, double eta,
                                         std::optional<double> epsilon) const {
    std::vector<CurvePoint> out;
    for (const auto &r : rows) {
        if (r.estimator != estimator || r.L != L || std::abs(r.eta - eta) > 1e-9) {
            continue;
        }
        if (epsilon.has_value() != r.epsilon.has_value()) {
            continue;
        }
        if (epsilon && std::abs(*epsilon - *r.epsilon) > 1e-7 * std::max(1e-3, *epsilon)) {
            continue;
        }
        out.push_back({r.p, r.mean, r.se});
    }
    std::sort(out.begin(), out.end(), [](const CurvePoint &a, const CurvePoint &b) { return a.p < b.p; });
    return out;
}

std::vector<int> Aggregate::sizes() const {
    std::set<int> s;
    for (const auto &r : rows) {
        s.insert(r.L);
    }
    return {s.begin(), s.end()};
}

std::vector<double> Aggregate::etas() const {
    std::set<double> s;
    for (const auto &r : rows) {
        s.insert(r.eta);
    }
    return {s.begin(), s.end()};
}

}  // namespace ptim
