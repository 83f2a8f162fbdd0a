// Copyright 2026 The nla-sim Authors
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

#pragma once

// Grid check of the brute-force simulator against the closed forms and the
// protocol invariants.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nla/analytics.hpp"
#include "nla/protocol.hpp"

namespace nla {

inline constexpr double kVerifyTolerance = 1e-12;

struct VerifyGrid {
    int n_min = 2;
    int n_max = 6;
    int eta_steps = 5;  // 0.1 .. 0.9
    int t_steps = 10;   // 0.05 .. 0.95

    std::vector<double> etas() const { return spaced(0.1, 0.9, eta_steps); }
    std::vector<double> ts() const { return spaced(0.05, 0.95, t_steps); }

    static std::vector<double> spaced(double lo, double hi, int count) {
        if (count < 1) {
            throw ConfigError("grid needs at least one point per axis");
        }
        if (count == 1) {
            return {lo};
        }
        std::vector<double> v;
        for (int i = 0; i < count; ++i) {
            double f = static_cast<double>(i) / (count - 1);
            v.push_back(lo * (1.0 - f) + hi * f);
        }
        return v;
    }
};

struct GridPoint {
    int n = 0;
    double eta = 0.0;
    double t = 0.0;
};

/// Worst value seen for one check, and where.
struct CheckResult {
    explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

    std::string name;
    double max_deviation = 0.0;
    std::optional<GridPoint> worst;

    void observe(double deviation, const GridPoint &p) {
        if (std::isnan(deviation)) {
            deviation = std::numeric_limits<double>::infinity();
        }
        if (!worst || deviation > max_deviation) {
            max_deviation = deviation;
            worst = p;
        }
    }

    bool passed() const { return max_deviation < kVerifyTolerance; }
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    int runs = 0;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed(); });
    }
};

inline VerifyReport verify_grid(const VerifyGrid &grid, const SimulationOptions &opts = {}) {
    if (grid.n_min < 2 || grid.n_max < grid.n_min) {
        throw ConfigError("verify needs 2 <= n-min <= n-max");
    }
    CheckResult eta_prime{"|eta' sim - formula|"};
    CheckResult success{"|P sim - formula|"};
    CheckResult gain{"|G sim - formula|"};
    CheckResult n_independence{"|G(N) - G(N')|"};
    CheckResult threshold{"(G > 1) xor (t < 1/2); |G - 1| at t = 1/2"};
    CheckResult symmetry{"|P_pattern - P/2^N|"};
    CheckResult heralded{"1 - fidelity(heralded, W)"};
    CheckResult pairwise{"1 - fidelity(heralded_i, heralded_j)"};
    CheckResult vacuum{"1 - fidelity(vacuum-branch herald, vac)"};
    CheckResult bookkeeping{"|sum of all outcome probabilities - 1|"};

    VerifyReport report;
    for (double eta : grid.etas()) {
        for (double t : grid.ts()) {
            std::optional<double> first_gain;
            for (int n = grid.n_min; n <= grid.n_max; ++n) {
                GridPoint p{n, eta, t};
                ProtocolOutcome o = run_nla({n, eta, t}, opts);
                ++report.runs;

                eta_prime.observe(std::abs(o.eta_prime - analytic_eta_prime(eta, t, n).value), p);
                success.observe(std::abs(o.success_prob - analytic_success_prob(eta, t, n).value), p);
                gain.observe(std::abs(o.gain - analytic_gain(eta, t).value), p);
                if (!first_gain) {
                    first_gain = o.gain;
                }
                n_independence.observe(std::abs(o.gain - *first_gain), p);
                if (t == 0.5) {
                    threshold.observe(std::abs(o.gain - 1.0), p);
                } else if (eta > 0.0 && eta < 1.0) {
                    threshold.observe((o.gain > 1.0) != (t < 0.5) ? 1.0 : 0.0, p);
                }

                double share = o.success_prob / static_cast<double>(o.per_pattern.size());
                const PureState *reference = nullptr;
                for (const auto &r : o.per_pattern) {
                    symmetry.observe(std::abs(r.probability - share), p);
                    if (r.fidelity) {
                        heralded.observe(1.0 - *r.fidelity, p);
                    }
                    if (r.heralded) {
                        if (reference == nullptr) {
                            reference = &*r.heralded;
                        }
                        pairwise.observe(1.0 - fidelity(*r.heralded, *reference), p);
                    }
                    if (r.heralded_vacuum) {
                        vacuum.observe(1.0 - fidelity(*r.heralded_vacuum, make_vacuum(r.heralded_vacuum->modes())), p);
                    }
                }
                bookkeeping.observe(std::abs(o.total_outcome_probability - 1.0), p);
            }
        }
    }
    report.checks = {eta_prime, success, gain, n_independence, threshold, symmetry,
                     heralded,  pairwise, vacuum, bookkeeping};
    return report;
}

}  // namespace nla
