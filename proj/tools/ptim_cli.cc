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

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ptim/harness.h"

using namespace ptim;

namespace {

// "a,b,c" or "lo:hi:step" (inclusive, rounded to 1e-9).
std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || step <= 0) {
            throw CLI::ValidationError("grid", "expected lo:hi:step");
        }
        for (long i = 0;; ++i) {
            double v = std::round((lo + i * step) * 1e9) / 1e9;
            if (v > hi + 1e-12) {
                break;
            }
            out.push_back(v);
        }
        return out;
    }
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        out.push_back(std::stod(field));
    }
    return out;
}

// Comma list, or "log:lo:count".
EpsilonGrid parse_epsilon(const std::string &text) {
    if (text.rfind("log:", 0) == 0) {
        auto rest = text.substr(4);
        auto colon = rest.find(':');
        return EpsilonGrid::log_spaced(std::stod(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
    }
    return EpsilonGrid{parse_grid(text)};
}

struct ScanFlags {
    std::vector<int> L;
    int T = 0;
    std::string p_grid;
    std::vector<double> eta;
    int samples = 0;
    uint64_t seed = 0;
    std::string epsilon_grid;
    int workers = 0;
    std::string out;
    std::string config;
    bool naive_only = false;
    std::vector<CLI::Option *> opts;
};

void add_scan_flags(CLI::App *app, ScanFlags &f) {
    f.opts.push_back(app->add_option("--L", f.L, "System sizes")->delimiter(','));
    f.opts.push_back(app->add_option("--T", f.T, "Bulk timesteps (default: protocol rule)"));
    f.opts.push_back(app->add_option("--p-grid", f.p_grid, "p values: a,b,c or lo:hi:step"));
    f.opts.push_back(app->add_option("--eta", f.eta, "Noise rates")->delimiter(','));
    f.opts.push_back(app->add_option("--samples", f.samples, "Samples per grid point"));
    f.opts.push_back(app->add_option("--seed", f.seed, "Master seed"));
    f.opts.push_back(app->add_option("--epsilon-grid", f.epsilon_grid, "Regularizations: list or log:lo:count"));
    f.opts.push_back(app->add_option("--workers", f.workers, "Worker threads (0 = all cores)"));
    f.opts.push_back(app->add_option("--out", f.out, "Output CSV path"));
    app->add_option("--config", f.config, "JSON config file; flags override it");
}

ScanConfig resolve(ProtocolKind protocol, const ScanFlags &f) {
    ScanConfig cfg;
    cfg.protocol = protocol;
    cfg.p_grid = default_p_grid();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            throw std::runtime_error("cannot open config " + f.config);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = config_from_json(buf.str(), cfg);
        cfg.protocol = protocol;
    }
    auto given = [&](const char *name) {
        for (auto *o : f.opts) {
            if (o->get_name() == name) {
                return o->count() > 0;
            }
        }
        return false;
    };
    if (given("--L")) cfg.L_list = f.L;
    if (given("--T")) cfg.T = f.T;
    if (given("--p-grid")) cfg.p_grid = parse_grid(f.p_grid);
    if (given("--eta")) cfg.eta_list = f.eta;
    if (given("--samples")) cfg.samples = f.samples;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--epsilon-grid")) cfg.epsilon_grid = parse_epsilon(f.epsilon_grid);
    if (given("--workers")) cfg.workers = f.workers;
    if (given("--out")) cfg.out = f.out;
    if (f.naive_only) cfg.naive_only = true;
    if (cfg.L_list.empty()) {
        throw std::invalid_argument("--L is required");
    }
    return cfg;
}

void write_outputs(const Aggregate &agg, const ScanConfig &cfg) {
    if (cfg.out.empty()) {
        std::cout << to_csv(agg);
        return;
    }
    write_csv(agg, cfg.out);
    std::ofstream sidecar(cfg.out + ".json", std::ios::binary);
    sidecar << config_json(cfg);
    std::cerr << "wrote " << agg.rows.size() << " rows to " << cfg.out << "\n";
}

void print_crossing(const char *label, const CrossingEstimate &c) {
    if (c.found) {
        std::printf("%s: %.4f [%.4f, %.4f]\n", label, c.p_cross, c.ci_low, c.ci_high);
    } else {
        std::printf("%s: %s\n", label, c.note.c_str());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"PTIM entanglement-transition simulator and bound estimators"};
    app.require_subcommand(1);

    struct Sub {
        const char *name;
        ProtocolKind kind;
        const char *help;
    };
    const Sub subs[] = {
        {"halfchain", ProtocolKind::kHalfChain, "Half-chain entanglement entropy scan"},
        {"ancilla", ProtocolKind::kAncilla, "Ancilla entanglement entropy scan"},
        {"decode", ProtocolKind::kDecoding, "Decoding correlation scan"},
        {"shadow", ProtocolKind::kShadow, "Shadow upper/lower bound scan"},
    };
    std::vector<ScanFlags> flags(4);
    std::vector<CLI::App *> apps;
    for (int i = 0; i < 4; ++i) {
        auto *sub = app.add_subcommand(subs[i].name, subs[i].help);
        add_scan_flags(sub, flags[i]);
        if (subs[i].kind == ProtocolKind::kShadow) {
            sub->add_flag("--naive-only", flags[i].naive_only, "Only the uncorrected baseline predictor");
        }
        apps.push_back(sub);
    }

    ScanFlags probe_flags;
    auto *probe = app.add_subcommand("delta-probe", "Crossings and delta(eta) from decoding and shadow scans");
    add_scan_flags(probe, probe_flags);

    std::vector<std::string> crossing_in;
    std::string crossing_estimator = "S_a";
    double crossing_eta = 0.0;
    std::string crossing_eps;
    bool crossing_any = false;
    auto *cross = app.add_subcommand("crossing", "Crossing of one estimator between consecutive sizes in a CSV");
    cross->add_option("--in", crossing_in, "Scan CSV file(s)")->required();
    cross->add_option("--estimator", crossing_estimator, "Estimator name");
    cross->add_option("--eta", crossing_eta, "Noise rate");
    cross->add_option("--epsilon", crossing_eps, "Regularization for per-epsilon estimators");
    cross->add_flag("--any-direction", crossing_any, "Also accept downward sign changes of small - large");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        for (int i = 0; i < 4; ++i) {
            if (apps[i]->parsed()) {
                ScanConfig cfg = resolve(subs[i].kind, flags[i]);
                write_outputs(run_scan(cfg), cfg);
                return 0;
            }
        }
        if (probe->parsed()) {
            ScanConfig base = resolve(ProtocolKind::kDecoding, probe_flags);
            if (base.L_list.size() != 2) {
                throw std::invalid_argument("delta-probe needs exactly two sizes in --L");
            }
            std::string prefix = base.out.empty() ? "delta_probe" : base.out;
            ScanConfig dec = base;
            dec.out = prefix + "_decode.csv";
            Aggregate dagg = run_scan(dec);
            write_outputs(dagg, dec);
            ScanConfig sh = base;
            sh.protocol = ProtocolKind::kShadow;
            sh.out = prefix + "_shadow.csv";
            Aggregate sagg = run_scan(sh);
            write_outputs(sagg, sh);
            DeltaProbe result = delta_probe(dagg, sagg, base.L_list[0], base.L_list[1], base.seed);
            std::printf("eta,p_dec,p_lower,p_upper,delta,delta_ci_low,delta_ci_high\n");
            for (const auto &row : result.rows) {
                std::printf("%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", row.eta,
                            row.decoding.found ? row.decoding.p_cross : NAN, row.lower.found ? row.lower.p_cross : NAN,
                            row.upper.found ? row.upper.p_cross : NAN, row.valid ? row.delta : NAN,
                            row.valid ? row.delta_ci_low : NAN, row.valid ? row.delta_ci_high : NAN);
            }
            std::printf("# strictly increasing: %s; slope %.6g, intercept %.6g\n",
                        result.strictly_increasing ? "yes" : "no", result.slope, result.intercept);
            return 0;
        }
        if (cross->parsed()) {
            Aggregate agg;
            for (const auto &path : crossing_in) {
                auto part = read_csv(path);
                agg.rows.insert(agg.rows.end(), part.rows.begin(), part.rows.end());
            }
            std::optional<double> eps;
            if (!crossing_eps.empty()) {
                eps = std::stod(crossing_eps);
            }
            auto sizes = agg.sizes();
            if (sizes.size() < 2) {
                throw std::invalid_argument("crossing needs at least two system sizes");
            }
            for (size_t i = 0; i + 1 < sizes.size(); ++i) {
                auto a = agg.curve(crossing_estimator, sizes[i], crossing_eta, eps);
                auto b = agg.curve(crossing_estimator, sizes[i + 1], crossing_eta, eps);
                if (a.empty() || b.empty()) {
                    throw std::invalid_argument("estimator " + crossing_estimator + " not found at eta " +
                                                std::to_string(crossing_eta));
                }
                std::string label = "L=" + std::to_string(sizes[i]) + " vs L=" + std::to_string(sizes[i + 1]);
                print_crossing(label.c_str(),
                               find_crossing(a, b, 0, 1000,
                                             crossing_any ? CrossingDirection::kAny : CrossingDirection::kUpward));
            }
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
