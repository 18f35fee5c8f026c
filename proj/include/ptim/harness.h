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

#ifndef PTIM_HARNESS_H
#define PTIM_HARNESS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptim/record.h"
#include "ptim/shadow.h"

namespace ptim {

struct ScanConfig {
    ProtocolKind protocol = ProtocolKind::kAncilla;
    std::vector<double> p_grid;
    std::vector<double> eta_list{0.0};
    std::vector<int> L_list;
    /// Overrides the per-protocol T rule when set.
    std::optional<int> T;
    int samples = 1000;
    uint64_t seed = 0;
    EpsilonGrid epsilon_grid = EpsilonGrid::log_spaced();
    /// Shadow scans: skip the error-corrected predictor.
    bool naive_only = false;
    /// 0 picks the hardware concurrency.
    int workers = 0;
    std::string out;

    void validate() const;
    int T_for(int L) const { return T ? *T : ProtocolConfig::default_T(protocol, L); }
};

/// Default p grid: 0.30..0.70 step 0.02 merged with 0.46..0.54 step 0.01.
std::vector<double> default_p_grid();

struct AggregateRow {
    ProtocolKind protocol = ProtocolKind::kAncilla;
    int L = 0;
    int T = 0;
    double p = 0.0;
    double eta = 0.0;
    std::string estimator;
    /// Blank in the CSV when absent.
    std::optional<double> epsilon;
    double mean = 0.0;
    double se = 0.0;
    long n_samples = 0;
    uint64_t seed = 0;
};

struct CurvePoint {
    double p = 0.0;
    double mean = 0.0;
    double se = 0.0;
};

struct Aggregate {
    std::vector<AggregateRow> rows;

    /// Points of one estimator at fixed (L, eta[, epsilon]), sorted by p.
    std::vector<CurvePoint> curve(const std::string &estimator, int L, double eta,
                                  std::optional<double> epsilon = std::nullopt) const;
    std::vector<int> sizes() const;
    std::vector<double> etas() const;
};

/// Seed of one grid point; independent of the rest of the grid.
uint64_t point_seed(uint64_t master_seed, int L, double p, double eta);

/// Per-sample estimator names for a protocol (in output order).
std::vector<std::string> estimator_names(const ScanConfig &cfg);

/// Runs every grid point; output is a pure function of `cfg` minus `workers`.
Aggregate run_scan(const ScanConfig &cfg);

struct CrossingEstimate {
    bool found = false;
    double p_cross = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// Fraction of bootstrap replicates that had a crossing.
    double bootstrap_found = 0.0;
    std::string note;
};

/// kUpward keeps only brackets where meanA - meanB goes from negative to
/// positive with increasing p (A the smaller system: ordered below, disordered
/// above).
enum class CrossingDirection : uint8_t { kAny, kUpward };

/// Crossing of meanA - meanB on a shared p grid. Only differences larger
/// than their combined standard error count as signed; the sign-change
/// bracket whose misfitting points carry the least total significance wins
/// (earliest on ties) and is
/// interpolated linearly, or by a least-squares line across unsigned points.
std::optional<double> crossing_point(const std::vector<CurvePoint> &a, const std::vector<CurvePoint> &b,
                                     CrossingDirection direction = CrossingDirection::kAny);

/// Adds a percentile interval from `resamples` Gaussian perturbations of
/// every point by its standard error.
CrossingEstimate find_crossing(const std::vector<CurvePoint> &a, const std::vector<CurvePoint> &b,
                               uint64_t seed = 0, int resamples = 1000,
                               CrossingDirection direction = CrossingDirection::kAny);

struct DeltaRow {
    double eta = 0.0;
    CrossingEstimate decoding;
    CrossingEstimate lower;
    CrossingEstimate upper;
    double delta = 0.0;
    double delta_ci_low = 0.0;
    double delta_ci_high = 0.0;
    bool valid = false;
};

struct DeltaProbe {
    std::vector<DeltaRow> rows;
    bool strictly_increasing = false;
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> residuals;
};

/// delta(eta) = upper crossing - lower crossing for sizes L1 < L2, from a
/// decoding aggregate and a shadow aggregate covering the same etas. All
/// crossings are upward.
DeltaProbe delta_probe(const Aggregate &decoding, const Aggregate &shadow, int L1, int L2, uint64_t seed = 0,
                       int resamples = 1000);

/// Smallest p where the curve falls through `level`, linearly interpolated.
std::optional<double> level_crossing(const std::vector<CurvePoint> &curve, double level);

// CSV with header protocol,L,T,p,eta,estimator,epsilon,mean,stderr,n_samples,seed.
std::string to_csv(const Aggregate &agg);
Aggregate parse_csv(const std::string &text);
void write_csv(const Aggregate &agg, const std::string &path);
Aggregate read_csv(const std::string &path);
std::string config_json(const ScanConfig &cfg);
ScanConfig config_from_json(const std::string &text, ScanConfig base);

}  // namespace ptim

#endif
