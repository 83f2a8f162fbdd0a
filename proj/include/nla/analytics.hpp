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

// Closed forms for the amplifier figures of merit.
//
// With survival probability eta, VBS transmission t and N parties:
//   success probability  P   = eta (1-t) t^(N-1) + (1-eta) t^N
//   output weight        eta' = eta (1-t) t^(N-1) / P
//   gain                 G   = eta'/eta = (1-t) / (eta (1-t) + (1-eta) t)
// eta' and G do not depend on N. Values on the boundary of the unit square
// that are only defined by continuity come back with `limit` set.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nla/fock.hpp"

namespace nla {

struct FormulaValue {
    double value = 0.0;
    bool limit = false;
};

enum class Quantity { gain, success_prob };

inline const char *quantity_name(Quantity q) { return q == Quantity::gain ? "gain" : "success_prob"; }

struct GainCurvePoint {
    double t = 0.0;
    double value = 0.0;
    Quantity kind = Quantity::gain;
    int n = 3;
    double eta = 0.0;
    bool limit = false;
};

namespace detail {

inline void require_unit(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(x));
    }
}

/// eta (1-t) + (1-eta) t, written so that it is exactly 1/2 at t = 1/2.
inline double gain_denominator(double eta, double t) { return (1.0 - t) - (1.0 - eta) * (1.0 - 2.0 * t); }

}  // namespace detail

inline FormulaValue analytic_gain(double eta, double t) {
    detail::require_unit(eta, "eta");
    detail::require_unit(t, "t");
    if (eta == 0.0) {
        // eta -> 0 limit of the gain; diverges at t = 0
        return {t == 0.0 ? std::numeric_limits<double>::infinity() : (1.0 - t) / t, true};
    }
    double denom = detail::gain_denominator(eta, t);
    if (denom == 0.0) {
        // eta = 1, t = 1: G = 1 identically along eta = 1
        return {1.0, true};
    }
    return {(1.0 - t) / denom, t == 0.0};
}

/// True iff the gain exceeds 1. Decided from the sign of
/// G - 1 = (1-eta)(1-2t) / (eta(1-t) + (1-eta)t), which is exact in floating
/// point, so the answer is (t < 1/2) for every eta in (0,1).
inline bool gain_threshold_check(double eta, double t) {
    detail::require_unit(eta, "eta");
    detail::require_unit(t, "t");
    if (!(eta > 0.0 && eta < 1.0)) {
        throw ConfigError("gain threshold is defined for eta in (0,1)");
    }
    return (1.0 - eta) * (1.0 - 2.0 * t) > 0.0 && detail::gain_denominator(eta, t) > 0.0;
}

inline FormulaValue analytic_success_prob(double eta, double t, int n) {
    detail::require_unit(eta, "eta");
    detail::require_unit(t, "t");
    if (n < 2) {
        throw ConfigError("mode count must be at least 2");
    }
    double tn1 = std::pow(t, n - 1);
    return {eta * (1.0 - t) * tn1 + (1.0 - eta) * tn1 * t, false};
}

/// Heralded single-photon weight. Evaluates both the N-party expression and
/// the N-free simplification and checks that they agree.
inline FormulaValue analytic_eta_prime(double eta, double t, int n) {
    detail::require_unit(eta, "eta");
    detail::require_unit(t, "t");
    if (n < 2) {
        throw ConfigError("mode count must be at least 2");
    }
    if (t == 0.0) {
        if (eta == 0.0) {
            throw ConfigError("eta' is undefined at eta = 0, t = 0");
        }
        return {1.0, true};
    }
    if (eta == 1.0) {
        return {1.0, t == 1.0};
    }
    double reduced = eta * (1.0 - t) / detail::gain_denominator(eta, t);
    if (eta == 0.0 || t == 1.0) {
        return {reduced, false};
    }

    double tn1 = std::pow(t, n - 1);
    double signal = eta * (1.0 - t) * tn1;
    double total = signal + (1.0 - eta) * tn1 * t;
    if (std::isnormal(total)) {
        double full = signal / total;
        if (std::abs(full - reduced) > 1e-12 * std::max(1.0, std::abs(reduced))) {
            throw std::logic_error("eta' N-form and reduced form disagree");
        }
    }
    return {reduced, false};
}

inline GainCurvePoint evaluate_point(Quantity kind, double eta, double t, int n) {
    FormulaValue v = kind == Quantity::gain ? analytic_gain(eta, t) : analytic_success_prob(eta, t, n);
    return {t, v.value, kind, n, eta, v.limit};
}

}  // namespace nla
