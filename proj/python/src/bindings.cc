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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "ptim/correction.h"
#include "ptim/harness.h"
#include "ptim/protocols.h"
#include "ptim/shadow.h"

namespace py = pybind11;
using namespace ptim;

namespace {

ProtocolKind protocol_from(const std::string &name) {
    auto kind = parse_protocol(name);
    if (!kind) {
        throw std::invalid_argument("unknown protocol: " + name);
    }
    return *kind;
}

Axis axis_from(const std::string &name) {
    if (name == "X" || name == "x") return Axis::kX;
    if (name == "Y" || name == "y") return Axis::kY;
    if (name == "Z" || name == "z") return Axis::kZ;
    throw std::invalid_argument("basis must be X, Y or Z");
}

std::string form_name(PredictionForm form) {
    switch (form) {
        case PredictionForm::kEntangled:
            return "entangled";
        case PredictionForm::kProduct:
            return "product";
        case PredictionForm::kPartialMixed:
            return "partial_mixed";
    }
    return "";
}

py::dict prediction_dict(const StatePrediction &p) {
    py::dict d;
    d["form"] = form_name(p.form);
    d["sign_zz"] = p.sign_zz;
    d["sign_xa"] = p.sign_xa;
    d["sign_xx"] = p.sign_xx;
    d["density_matrix"] = MatrixXc(p.to_density_matrix());
    return d;
}

py::list events_list(const MeasurementRecord &record) {
    py::list out;
    for (const auto &ev : record.events()) {
        out.append(py::make_tuple(ev.time, ev.kind == OpKind::kE ? "E" : "S", ev.location, int(ev.outcome),
                                  ev.recorded));
    }
    return out;
}

py::dict sample(const std::string &protocol, int L, double p, double eta, uint64_t seed, uint64_t sample_index,
                std::optional<int> T) {
    ProtocolConfig cfg = ProtocolConfig::make(protocol_from(protocol), L, p, eta, seed, sample_index);
    if (T) {
        cfg.T = *T;
    }
    py::dict d;
    d["protocol"] = protocol;
    d["L"] = cfg.L;
    d["T"] = cfg.T;
    auto common = [&](const MeasurementRecord &rec) {
        d["events"] = events_list(rec);
        d["num_masked"] = rec.count_masked();
        d["matching_weight_E"] = augment_E(rec).matching_weight;
        d["matching_weight_S"] = augment_S(rec, default_dual_mode(rec)).matching_weight;
    };
    switch (cfg.protocol) {
        case ProtocolKind::kHalfChain: {
            auto s = protocol_halfchain(cfg);
            common(s.record);
            d["S_half"] = s.half_chain_entropy;
            break;
        }
        case ProtocolKind::kAncilla: {
            auto s = protocol_ancilla(cfg);
            common(s.record);
            d["S_a"] = s.ancilla_entropy;
            break;
        }
        case ProtocolKind::kDecoding: {
            auto s = protocol_decoding(cfg);
            common(s.record);
            Rng rng = make_stream(cfg.master_seed, cfg.sample_index, Stream::kDecoder);
            auto c = decode(s.record, rng);
            d["encoded_bit"] = s.encoded_bit;
            d["z_readout"] = s.z_readout;
            d["survived"] = s.survived;
            d["correction"] = std::vector<int>(c.bits.begin(), c.bits.end());
            d["predicted_survival"] = c.predicted_survival;
            d["R"] = decoding_correlation(s.encoded_bit, c, s.z_readout);
            break;
        }
        case ProtocolKind::kShadow: {
            auto s = protocol_shadow(cfg);
            common(s.record);
            d["S_a"] = s.ancilla_entropy;
            d["bases"] = py::make_tuple(std::string(1, axis_name(s.basis_ancilla)),
                                        std::string(1, axis_name(s.basis_last)));
            d["outcomes"] = py::make_tuple(s.outcome_ancilla, s.outcome_last);
            d["prediction"] = prediction_dict(predict_state(s.record));
            d["naive_prediction"] = prediction_dict(predict_state_naive(s.record));
            break;
        }
    }
    return d;
}

py::tuple mwpm(int num_nodes, const std::vector<std::tuple<int, int, int>> &edges) {
    SyndromeGraph g(num_nodes);
    for (auto [u, v, w] : edges) {
        if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes || u == v || w < 0) {
            throw std::invalid_argument("edges must join distinct nodes with non-negative weight");
        }
        g.set_weight(u, v, w);
    }
    Matching m = mwpm_exact(g);
    return py::make_tuple(m.pairs, m.total_weight);
}

std::string scan(const std::string &protocol, const std::vector<double> &p_grid, const std::vector<int> &L_list,
                 const std::vector<double> &eta_list, int samples, uint64_t seed, std::optional<int> T,
                 std::optional<std::vector<double>> epsilon_grid, bool naive_only, int workers) {
    ScanConfig cfg;
    cfg.protocol = protocol_from(protocol);
    cfg.p_grid = p_grid;
    cfg.L_list = L_list;
    cfg.eta_list = eta_list;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.T = T;
    if (epsilon_grid) {
        cfg.epsilon_grid.values = *epsilon_grid;
    }
    cfg.naive_only = naive_only;
    cfg.workers = workers;
    Aggregate agg;
    {
        py::gil_scoped_release release;
        agg = run_scan(cfg);
    }
    return to_csv(agg);
}

std::vector<CurvePoint> curve_from(const std::vector<double> &p, const std::vector<double> &mean,
                                   const std::vector<double> &se) {
    if (p.size() != mean.size() || p.size() != se.size()) {
        throw std::invalid_argument("p, mean and se must have equal length");
    }
    std::vector<CurvePoint> out;
    for (size_t i = 0; i < p.size(); ++i) {
        out.push_back({p[i], mean[i], se[i]});
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_ptim, m) {
    m.doc() = "PTIM entanglement-transition simulator bindings";

    m.def("sample", &sample, py::arg("protocol"), py::arg("L"), py::arg("p"), py::arg("eta") = 0.0,
          py::arg("seed") = 0, py::arg("sample_index") = 0, py::arg("T") = py::none(),
          "Simulate one trajectory and return its record and estimator inputs.");

    m.def("mwpm", &mwpm, py::arg("num_nodes"), py::arg("edges"),
          "Exact minimum-weight perfect matching; edges are (u, v, weight).");

    m.def("scan", &scan, py::arg("protocol"), py::arg("p_grid"), py::arg("L_list"),
          py::arg("eta_list") = std::vector<double>{0.0}, py::arg("samples") = 1000, py::arg("seed") = 0,
          py::arg("T") = py::none(), py::arg("epsilon_grid") = py::none(), py::arg("naive_only") = false,
          py::arg("workers") = 0, "Run a parameter scan and return the aggregate CSV text.");

    m.def("default_p_grid", &default_p_grid);
    m.def("default_epsilon_grid", []() { return EpsilonGrid::log_spaced().values; });
    m.def("point_seed", &point_seed, py::arg("seed"), py::arg("L"), py::arg("p"), py::arg("eta"));

    m.def(
        "find_crossing",
        [](const std::vector<double> &p, const std::vector<double> &mean_a, const std::vector<double> &se_a,
           const std::vector<double> &mean_b, const std::vector<double> &se_b, uint64_t seed, int resamples, bool upward) {
            auto est = find_crossing(curve_from(p, mean_a, se_a), curve_from(p, mean_b, se_b), seed, resamples,
                                     upward ? CrossingDirection::kUpward : CrossingDirection::kAny);
            py::dict d;
            d["found"] = est.found;
            d["p_cross"] = est.p_cross;
            d["ci_low"] = est.ci_low;
            d["ci_high"] = est.ci_high;
            d["bootstrap_found"] = est.bootstrap_found;
            d["note"] = est.note;
            return d;
        },
        py::arg("p"), py::arg("mean_a"), py::arg("se_a"), py::arg("mean_b"), py::arg("se_b"), py::arg("seed") = 0,
        py::arg("resamples") = 1000, py::arg("upward") = false);

    m.def(
        "level_crossing",
        [](const std::vector<double> &p, const std::vector<double> &mean, double level) {
            return level_crossing(curve_from(p, mean, std::vector<double>(p.size(), 0.0)), level);
        },
        py::arg("p"), py::arg("mean"), py::arg("level") = 0.5);

    m.def(
        "make_shadow", [](const std::string &basis, int outcome) { return Matrix2c(make_shadow(axis_from(basis), outcome)); },
        py::arg("basis"), py::arg("outcome"));
    m.def(
        "regularize", [](const MatrixXc &rho, double eps) { return regularize(rho, eps); }, py::arg("rho"),
        py::arg("epsilon"));
    m.def("shadow_entropy", &shadow_entropy, py::arg("rho_shadow"), py::arg("rho_prediction"));
}
