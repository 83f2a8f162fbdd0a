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

// Rendering of protocol outcomes, sampling reports and verify reports.

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "nla/analytics.hpp"
#include "nla/protocol.hpp"
#include "nla/sweep.hpp"
#include "nla/verify.hpp"

namespace nla {

namespace detail {

inline nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace detail

/// {"n", "eta", "t", "eta_prime", "p_success", "gain", "patterns": [{"id", "prob", "fidelity"}]}
inline nlohmann::json to_json(const ProtocolOutcome &o) {
    auto patterns = nlohmann::json::array();
    for (const auto &r : o.per_pattern) {
        patterns.push_back({{"id", r.id},
                            {"prob", r.probability},
                            {"fidelity", r.fidelity ? nlohmann::json(*r.fidelity) : nlohmann::json()}});
    }
    return {{"n", o.config.n_modes},
            {"eta", o.config.eta},
            {"t", o.config.t},
            {"eta_prime", o.eta_prime},
            {"p_success", o.success_prob},
            {"gain", detail::number_or_null(o.gain)},
            {"patterns", patterns}};
}

inline void render_text(std::ostream &out, const ProtocolOutcome &o) {
    out << "n=" << o.config.n_modes << " eta=" << format_number(o.config.eta) << " t=" << format_number(o.config.t)
        << '\n';
    out << "eta_prime=" << format_number(o.eta_prime) << (o.eta_prime_is_limit ? " (limit)" : "") << '\n';
    out << "p=" << format_number(o.success_prob) << '\n';
    out << "gain=" << format_number(o.gain) << (o.gain_is_limit ? " (limit)" : "") << '\n';
    out << "id\tpattern\tprob\tfidelity\tfidelity_uncorrected\n";
    for (const auto &r : o.per_pattern) {
        out << r.id << '\t' << r.pattern.str() << '\t' << format_number(r.probability) << '\t'
            << (r.fidelity ? format_number(*r.fidelity) : "-") << '\t'
            << (r.fidelity_raw ? format_number(*r.fidelity_raw) : "-") << '\n';
    }
}

struct SampleComparison {
    double p_expected = 0.0;
    double p_z = 0.0;
    double eta_prime_expected = 0.0;
    double eta_prime_z = 0.0;
    double gain_expected = 0.0;
    double gain_z = 0.0;
};

/// z-scores use the binomial standard error at the analytic value.
inline SampleComparison compare_to_analytics(const SampleReport &r) {
    const auto &c = r.config;
    SampleComparison cmp;
    cmp.p_expected = analytic_success_prob(c.eta, c.t, c.n_modes).value;
    double p_sd = std::sqrt(cmp.p_expected * (1.0 - cmp.p_expected) / static_cast<double>(r.shots));
    cmp.p_z = (r.p_hat - cmp.p_expected) / p_sd;
    if (c.t > 0.0 || c.eta > 0.0) {
        cmp.eta_prime_expected = analytic_eta_prime(c.eta, c.t, c.n_modes).value;
    }
    double k = static_cast<double>(r.accepted);
    double e_sd = std::sqrt(cmp.eta_prime_expected * (1.0 - cmp.eta_prime_expected) / k);
    cmp.eta_prime_z = (r.eta_prime_hat - cmp.eta_prime_expected) / e_sd;
    cmp.gain_expected = analytic_gain(c.eta, c.t).value;
    cmp.gain_z = cmp.eta_prime_z;  // gain is eta'/eta with eta fixed
    return cmp;
}

inline nlohmann::json to_json(const SampleReport &r) {
    SampleComparison cmp = compare_to_analytics(r);
    using detail::number_or_null;
    return {{"n", r.config.n_modes},
            {"eta", r.config.eta},
            {"t", r.config.t},
            {"shots", r.shots},
            {"seed", r.seed},
            {"accepted", r.accepted},
            {"p_hat", r.p_hat},
            {"p_se", r.p_se},
            {"p_expected", cmp.p_expected},
            {"p_z", number_or_null(cmp.p_z)},
            {"eta_prime_hat", number_or_null(r.eta_prime_hat)},
            {"eta_prime_se", number_or_null(r.eta_prime_se)},
            {"eta_prime_expected", cmp.eta_prime_expected},
            {"eta_prime_z", number_or_null(cmp.eta_prime_z)},
            {"gain_hat", number_or_null(r.gain_hat)},
            {"gain_se", number_or_null(r.gain_se)},
            {"gain_expected", number_or_null(cmp.gain_expected)},
            {"gain_z", number_or_null(cmp.gain_z)}};
}

inline void render_text(std::ostream &out, const SampleReport &r) {
    SampleComparison cmp = compare_to_analytics(r);
    auto line = [&](const char *name, double hat, double se, double expected, double z) {
        out << name << "_hat=" << format_number(hat) << " se=" << format_number(se)
            << " expected=" << format_number(expected) << " z=" << format_number(z) << '\n';
    };
    out << "n=" << r.config.n_modes << " eta=" << format_number(r.config.eta) << " t=" << format_number(r.config.t)
        << " shots=" << r.shots << " seed=" << r.seed << " accepted=" << r.accepted << '\n';
    line("p", r.p_hat, r.p_se, cmp.p_expected, cmp.p_z);
    line("eta_prime", r.eta_prime_hat, r.eta_prime_se, cmp.eta_prime_expected, cmp.eta_prime_z);
    line("gain", r.gain_hat, r.gain_se, cmp.gain_expected, cmp.gain_z);
}

inline void render_text(std::ostream &out, const VerifyReport &report) {
    out << "runs=" << report.runs << '\n';
    for (const auto &c : report.checks) {
        out << (c.passed() ? "ok   " : "FAIL ") << c.name << " max=" << format_number(c.max_deviation);
        if (!c.passed() && c.worst) {
            out << " at n=" << c.worst->n << " eta=" << format_number(c.worst->eta)
                << " t=" << format_number(c.worst->t);
        }
        out << '\n';
    }
    out << (report.passed() ? "max |sim-formula| < 1e-12" : "verification FAILED") << '\n';
}

}  // namespace nla
