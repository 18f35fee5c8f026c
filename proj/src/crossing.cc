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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ptim/harness.h"
#include "ptim/rng.h"

namespace ptim {

namespace {

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    double pos = q * (values.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

// Differences within one combined standard error of zero carry no sign.
int significant_sign(double d, double s) { return std::abs(d) > s ? sign_of(d) : 0; }

// Zero of the least-squares line through points [i, j], clamped to the bracket;
// the midpoint when the fit is flat.
double fitted_zero(const std::vector<double> &p, const std::vector<double> &d, int i, int j) {
    double n = j - i + 1;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int k = i; k <= j; ++k) {
        sx += p[k];
        sy += d[k];
        sxx += p[k] * p[k];
        sxy += p[k] * d[k];
    }
    double denom = n * sxx - sx * sx;
    double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    if (slope == 0.0 || sign_of(slope) == sign_of(d[i])) {
        return 0.5 * (p[i] + p[j]);
    }
    double intercept = (sy - slope * sx) / n;
    return std::clamp(-intercept / slope, p[i], p[j]);
}

std::optional<double> crossing_of_differences(const std::vector<double> &p, const std::vector<double> &d,
                                              const std::vector<double> &s, CrossingDirection direction) {
    std::vector<int> nz;
    std::vector<int> sg;
    for (size_t i = 0; i < d.size(); ++i) {
        if (int v = significant_sign(d[i], s[i]); v != 0) {
            nz.push_back(static_cast<int>(i));
            sg.push_back(v);
        }
    }
    // A misfit weighs its significance |d| / s (|d| for exact points).
    auto weight = [&](int i) { return s[i] > 0.0 ? std::abs(d[i]) / s[i] : std::abs(d[i]); };
    int best = -1;
    double best_misfit = 0.0;
    for (size_t k = 0; k + 1 < nz.size(); ++k) {
        int left = sg[k];
        if (left == sg[k + 1] || (direction == CrossingDirection::kUpward && left > 0)) {
            continue;
        }
        double misfit = 0.0;
        for (size_t j = 0; j < nz.size(); ++j) {
            int expected = j <= k ? left : -left;
            misfit += sg[j] != expected ? weight(nz[j]) : 0.0;
        }
        if (best < 0 || misfit < best_misfit) {
            best = static_cast<int>(k);
            best_misfit = misfit;
        }
    }
    if (best < 0) {
        return std::nullopt;
    }
    int i = nz[best];
    int j = nz[best + 1];
    if (j == i + 1) {
        return p[i] + (p[j] - p[i]) * d[i] / (d[i] - d[j]);
    }
    bool exact = true;
    for (int k = i + 1; k < j; ++k) {
        exact = exact && d[k] == 0.0;
    }
    if (exact) {
        // A run of exact zeros: its middle.
        return 0.5 * (p[i + 1] + p[j - 1]);
    }
    return fitted_zero(p, d, i, j);
}

void check_same_grid(const std::vector<CurvePoint> &a, const std::vector<CurvePoint> &b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("crossing needs two non-empty curves on the same p grid");
    }
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].p - b[i].p) > 1e-12) {
            throw std::invalid_argument("crossing curves use different p grids");
        }
    }
}

std::vector<CurvePoint> perturbed(const std::vector<CurvePoint> &c, Rng &rng, std::normal_distribution<double> &n) {
    std::vector<CurvePoint> out = c;
    for (auto &pt : out) {
        pt.mean += pt.se * n(rng);
    }
    return out;
}

}  // namespace

std::optional<double> crossing_point(const std::vector<CurvePoint> &a, const std::vector<CurvePoint> &b,
                                     CrossingDirection direction) {
    check_same_grid(a, b);
    std::vector<double> p;
    std::vector<double> d;
    std::vector<double> s;
    for (size_t i = 0; i < a.size(); ++i) {
        p.push_back(a[i].p);
        d.push_back(a[i].mean - b[i].mean);
        s.push_back(std::hypot(a[i].se, b[i].se));
    }
    return crossing_of_differences(p, d, s, direction);
}

CrossingEstimate find_crossing(const std::vector<CurvePoint> &a, const std::vector<CurvePoint> &b, uint64_t seed,
                               int resamples, CrossingDirection direction) {
    CrossingEstimate est;
    auto centre = crossing_point(a, b, direction);
    if (!centre) {
        est.note = "no crossing in range";
        return est;
    }
    est.found = true;
    est.p_cross = *centre;
    Rng rng = make_stream(seed, 0, Stream::kBootstrap);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> reps;
    for (int r = 0; r < resamples; ++r) {
        auto pa = perturbed(a, rng, normal);
        auto pb = perturbed(b, rng, normal);
        if (auto c = crossing_point(pa, pb, direction)) {
            reps.push_back(*c);
        }
    }
    est.bootstrap_found = resamples > 0 ? static_cast<double>(reps.size()) / resamples : 0.0;
    if (reps.empty()) {
        est.ci_low = est.ci_high = est.p_cross;
    } else {
        est.ci_low = percentile(reps, 0.025);
        est.ci_high = percentile(reps, 0.975);
    }
    return est;
}

std::optional<double> level_crossing(const std::vector<CurvePoint> &curve, double level) {
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        double d0 = curve[i].mean - level;
        double d1 = curve[i + 1].mean - level;
        if (d0 >= 0.0 && d1 < 0.0) {
            return curve[i].p + (curve[i + 1].p - curve[i].p) * d0 / (d0 - d1);
        }
    }
    return std::nullopt;
}

DeltaProbe delta_probe(const Aggregate &decoding, const Aggregate &shadow, int L1, int L2, uint64_t seed,
                       int resamples) {
    if (L1 >= L2) {
        throw std::invalid_argument("delta probe needs L1 < L2");
    }
    constexpr auto kUp = CrossingDirection::kUpward;
    DeltaProbe probe;
    for (double eta : shadow.etas()) {
        DeltaRow row;
        row.eta = eta;
        auto r1 = decoding.curve("R", L1, eta);
        auto r2 = decoding.curve("R", L2, eta);
        auto lo1 = shadow.curve("lower_envelope", L1, eta);
        auto lo2 = shadow.curve("lower_envelope", L2, eta);
        auto up1 = shadow.curve("upper_envelope", L1, eta);
        auto up2 = shadow.curve("upper_envelope", L2, eta);
        if (lo1.empty() || lo2.empty() || up1.empty() || up2.empty()) {
            throw std::invalid_argument("delta probe is missing shadow scans");
        }
        if (!r1.empty() && !r2.empty()) {
            row.decoding = find_crossing(r1, r2, seed, resamples, kUp);
        } else {
            row.decoding.note = "missing decoding scan";
        }
        row.lower = find_crossing(lo1, lo2, seed + 1, resamples, kUp);
        row.upper = find_crossing(up1, up2, seed + 2, resamples, kUp);
        if (row.lower.found && row.upper.found) {
            row.valid = true;
            row.delta = row.upper.p_cross - row.lower.p_cross;
            // Paired bootstrap: both crossings come from one perturbed replicate.
            Rng rng = make_stream(seed + 3, 0, Stream::kBootstrap);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<double> reps;
            for (int r = 0; r < resamples; ++r) {
                auto a1 = perturbed(lo1, rng, normal);
                auto a2 = perturbed(lo2, rng, normal);
                auto b1 = perturbed(up1, rng, normal);
                auto b2 = perturbed(up2, rng, normal);
                auto cl = crossing_point(a1, a2, kUp);
                auto cu = crossing_point(b1, b2, kUp);
                if (cl && cu) {
                    reps.push_back(*cu - *cl);
                }
            }
            if (reps.empty()) {
                row.delta_ci_low = row.delta_ci_high = row.delta;
            } else {
                row.delta_ci_low = percentile(reps, 0.025);
                row.delta_ci_high = percentile(reps, 0.975);
            }
        }
        probe.rows.push_back(row);
    }
    std::vector<const DeltaRow *> valid;
    for (const auto &row : probe.rows) {
        if (row.valid) {
            valid.push_back(&row);
        }
    }
    probe.strictly_increasing = valid.size() == probe.rows.size() && !valid.empty();
    for (size_t i = 0; i + 1 < valid.size(); ++i) {
        // Increase significant at the 95% level, with each CI read as +/- 1.96 sigma.
        double s0 = (valid[i]->delta_ci_high - valid[i]->delta_ci_low) / (2 * 1.96);
        double s1 = (valid[i + 1]->delta_ci_high - valid[i + 1]->delta_ci_low) / (2 * 1.96);
        if (!(valid[i + 1]->delta - valid[i]->delta > 1.96 * std::sqrt(s0 * s0 + s1 * s1))) {
            probe.strictly_increasing = false;
        }
    }
    if (valid.size() >= 2) {
        double n = static_cast<double>(valid.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (const auto *row : valid) {
            sx += row->eta;
            sy += row->delta;
            sxx += row->eta * row->eta;
            sxy += row->eta * row->delta;
        }
        double denom = n * sxx - sx * sx;
        if (denom != 0.0) {
            probe.slope = (n * sxy - sx * sy) / denom;
            probe.intercept = (sy - probe.slope * sx) / n;
        }
        for (const auto *row : valid) {
            probe.residuals.push_back(row->delta - (probe.intercept + probe.slope * row->eta));
        }
    }
    return probe;
}

}  // namespace ptim
