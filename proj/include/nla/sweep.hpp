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

// Parameter sweeps over the VBS transmission t and the CSV they produce.
//
// CSV layout: header `t,value,quantity,n,eta`, one row per (t, n, eta),
// numbers printed with 12 significant digits. Rows are ordered by n, then
// eta, then t, whatever order they were computed in.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nla/analytics.hpp"
#include "nla/protocol.hpp"

namespace nla {

struct SweepSpec {
    Quantity quantity = Quantity::success_prob;
    double t_start = 0.01;
    double t_stop = 0.99;
    int steps = 99;
    std::vector<int> ns{3};
    std::vector<double> etas{0.2};
    /// Adds rows at t = 0 and t = 1, tagged `<quantity>:limit`.
    bool include_limits = false;
    /// Adds simulator rows next to every analytic one, tagged `<quantity>:sim`.
    bool cross_check = false;

    void validate() const {
        if (!(t_start >= 0.0 && t_stop <= 1.0 && t_start < t_stop)) {
            throw ConfigError("sweep range needs 0 <= start < stop <= 1");
        }
        if (steps < 2) {
            throw ConfigError("sweep needs at least 2 steps");
        }
        if (ns.empty() || etas.empty()) {
            throw ConfigError("sweep needs at least one n and one eta");
        }
        for (int n : ns) {
            ProtocolConfig{n, 0.5, 0.5}.validate();
        }
        for (double eta : etas) {
            ProtocolConfig{3, eta, 0.5}.validate();
        }
    }

    double t_at(int i) const {
        double f = static_cast<double>(i) / static_cast<double>(steps - 1);
        return t_start * (1.0 - f) + t_stop * f;
    }
};

struct SweepRow {
    double t = 0.0;
    double value = 0.0;
    std::string quantity;
    int n = 0;
    double eta = 0.0;
};

inline std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    spec.validate();
    std::string name = quantity_name(spec.quantity);
    std::vector<SweepRow> rows;
    for (int n : spec.ns) {
        for (double eta : spec.etas) {
            auto emit = [&](double t, const std::string &tag) {
                GainCurvePoint p = evaluate_point(spec.quantity, eta, t, n);
                rows.push_back({t, p.value, tag, n, eta});
                if (spec.cross_check) {
                    ProtocolOutcome o = run_nla({n, eta, t});
                    double sim = spec.quantity == Quantity::gain ? o.gain : o.success_prob;
                    rows.push_back({t, sim, tag + ":sim", n, eta});
                }
            };
            if (spec.include_limits && spec.t_start > 0.0) {
                emit(0.0, name + ":limit");
            }
            for (int i = 0; i < spec.steps; ++i) {
                emit(spec.t_at(i), name);
            }
            if (spec.include_limits && spec.t_stop < 1.0) {
                emit(1.0, name + ":limit");
            }
        }
    }
    return rows;
}

inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void write_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "t,value,quantity,n,eta\n";
    for (const auto &r : rows) {
        out << format_number(r.t) << ',' << format_number(r.value) << ',' << r.quantity << ',' << r.n << ','
            << format_number(r.eta) << '\n';
    }
}

/// Figure presets: fig3 gain curves, fig4/fig5 success probability against N,
/// fig6 success probability against eta.
inline std::optional<SweepSpec> figure_preset(std::string_view name) {
    SweepSpec s;
    if (name == "fig3") {
        s.quantity = Quantity::gain;
        s.ns = {3};
        s.etas = {0.2, 0.4, 0.6, 0.8};
    } else if (name == "fig4") {
        s.quantity = Quantity::success_prob;
        s.ns = {3, 4, 5, 6};
        s.etas = {0.2};
    } else if (name == "fig5") {
        s.quantity = Quantity::success_prob;
        s.ns = {3, 4, 5, 6};
        s.etas = {0.8};
    } else if (name == "fig6") {
        s.quantity = Quantity::success_prob;
        s.ns = {3};
        s.etas = {0.2, 0.4, 0.6, 0.8};
    } else {
        return std::nullopt;
    }
    return s;
}

}  // namespace nla
