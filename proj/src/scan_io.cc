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

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "ptim/harness.h"

namespace ptim {

namespace {

constexpr const char *kHeader = "protocol,L,T,p,eta,estimator,epsilon,mean,stderr,n_samples,seed";

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

}  // namespace

std::string to_csv(const Aggregate &agg) {
    std::string out = kHeader;
    out += '\n';
    for (const auto &r : agg.rows) {
        out += std::string(protocol_name(r.protocol)) + ',' + std::to_string(r.L) + ',' + std::to_string(r.T) + ',' +
               fmt(r.p) + ',' + fmt(r.eta) + ',' + r.estimator + ',' + (r.epsilon ? fmt(*r.epsilon) : "") + ',' +
               fmt(r.mean) + ',' + fmt(r.se) + ',' + std::to_string(r.n_samples) + ',' + std::to_string(r.seed) +
               '\n';
    }
    return out;
}

Aggregate parse_csv(const std::string &text) {
    Aggregate agg;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw std::runtime_error("CSV header mismatch");
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 11) {
            throw std::runtime_error("CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                                     " fields");
        }
        AggregateRow r;
        auto kind = parse_protocol(f[0]);
        if (!kind) {
            throw std::runtime_error("CSV line " + std::to_string(lineno) + ": unknown protocol " + f[0]);
        }
        r.protocol = *kind;
        r.L = std::stoi(f[1]);
        r.T = std::stoi(f[2]);
        r.p = std::stod(f[3]);
        r.eta = std::stod(f[4]);
        r.estimator = f[5];
        if (!f[6].empty()) {
            r.epsilon = std::stod(f[6]);
        }
        r.mean = std::stod(f[7]);
        r.se = std::stod(f[8]);
        r.n_samples = std::stol(f[9]);
        r.seed = std::stoull(f[10]);
        agg.rows.push_back(std::move(r));
    }
    return agg;
}

void write_csv(const Aggregate &agg, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << to_csv(agg);
    if (!out) {
        throw std::runtime_error("failed writing " + path);
    }
}

Aggregate read_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string config_json(const ScanConfig &cfg) {
    nlohmann::json j;
    j["protocol"] = std::string(protocol_name(cfg.protocol));
    j["p_grid"] = cfg.p_grid;
    j["eta"] = cfg.eta_list;
    j["L"] = cfg.L_list;
    if (cfg.T) {
        j["T"] = *cfg.T;
    } else {
        j["T"] = nullptr;
    }
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["epsilon_grid"] = cfg.epsilon_grid.values;
    j["naive_only"] = cfg.naive_only;
    j["workers"] = cfg.workers;
    j["out"] = cfg.out;
    return j.dump(2) + "\n";
}

ScanConfig config_from_json(const std::string &text, ScanConfig cfg) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("protocol")) {
        auto kind = parse_protocol(j["protocol"].get<std::string>());
        if (!kind) {
            throw std::invalid_argument("unknown protocol in config");
        }
        cfg.protocol = *kind;
    }
    auto list_or_scalar = [&](const char *key, auto &target) {
        if (!j.contains(key)) {
            return;
        }
        using Elem = typename std::decay_t<decltype(target)>::value_type;
        if (j[key].is_array()) {
            target = j[key].get<std::decay_t<decltype(target)>>();
        } else {
            target = {j[key].get<Elem>()};
        }
    };
    list_or_scalar("p_grid", cfg.p_grid);
    list_or_scalar("eta", cfg.eta_list);
    list_or_scalar("L", cfg.L_list);
    list_or_scalar("epsilon_grid", cfg.epsilon_grid.values);
    if (j.contains("T")) {
        if (j["T"].is_null()) {
            cfg.T.reset();
        } else {
            cfg.T = j["T"].get<int>();
        }
    }
    if (j.contains("samples")) {
        cfg.samples = j["samples"].get<int>();
    }
    if (j.contains("seed")) {
        cfg.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("naive_only")) {
        cfg.naive_only = j["naive_only"].get<bool>();
    }
    if (j.contains("workers")) {
        cfg.workers = j["workers"].get<int>();
    }
    if (j.contains("out")) {
        cfg.out = j["out"].get<std::string>();
    }
    return cfg;
}

}  // namespace ptim
