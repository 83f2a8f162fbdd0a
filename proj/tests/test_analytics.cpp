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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

#include "gtest/gtest.h"

#include "nla/analytics.hpp"

using namespace nla;

namespace {

struct Rational {
    std::int64_t num;
    std::int64_t den;

    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        std::int64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
    Rational operator+(Rational o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(Rational o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator*(Rational o) const { return {num * o.num, den * o.den}; }
    Rational operator/(Rational o) const { return {num * o.den, den * o.num}; }
    bool operator==(const Rational &) const = default;
};

}  // namespace

TEST(AnalyticGain, fixed_point_at_half) {
    for (int k = 1; k < 100; ++k) {
        EXPECT_EQ(analytic_gain(k / 100.0, 0.5).value, 1.0) << "eta=" << k / 100.0;
    }
    EXPECT_EQ(analytic_gain(0.3, 0.5).value, 1.0);
}

TEST(AnalyticGain, fixed_point_in_exact_rationals) {
    Rational half(1, 2);
    for (std::int64_t q = 2; q <= 20; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            Rational eta(p, q);
            Rational one(1);
            Rational g = (one - half) / (eta * (one - half) + (one - eta) * half);
            EXPECT_EQ(g, Rational(1));
        }
    }
}

TEST(AnalyticGain, derived_values) {
    EXPECT_NEAR(analytic_gain(0.8, 0.25).value, 0.75 / (0.8 * 0.75 + 0.2 * 0.25), 1e-15);
    EXPECT_NEAR(analytic_gain(0.8, 0.25).value, 1.153846153846, 1e-12);
    EXPECT_NEAR(analytic_gain(0.2, 0.3).value, 0.7 / (0.2 * 0.7 + 0.8 * 0.3), 1e-15);
    EXPECT_NEAR(analytic_gain(0.2, 0.3).value, 1.842105263158, 1e-12);
}

TEST(AnalyticGain, small_t_limit_is_inverse_eta) {
    EXPECT_NEAR(analytic_gain(0.2, 1e-9).value, 5.0, 1e-7);
    auto at_zero = analytic_gain(0.2, 0.0);
    EXPECT_NEAR(at_zero.value, 5.0, 1e-15);
    EXPECT_TRUE(at_zero.limit);
}

TEST(AnalyticGain, eta_zero_reports_limit) {
    auto g = analytic_gain(0.0, 0.25);
    EXPECT_TRUE(g.limit);
    EXPECT_DOUBLE_EQ(g.value, 3.0);
    EXPECT_TRUE(std::isinf(analytic_gain(0.0, 0.0).value));
    auto corner = analytic_gain(1.0, 1.0);
    EXPECT_EQ(corner.value, 1.0);
    EXPECT_TRUE(corner.limit);
    EXPECT_EQ(analytic_gain(0.4, 1.0).value, 0.0);
    EXPECT_THROW(analytic_gain(1.2, 0.5), ConfigError);
    EXPECT_THROW(analytic_gain(0.5, -0.1), ConfigError);
}

TEST(AnalyticGain, strictly_decreasing_and_bounded) {
    for (double eta : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        double prev = analytic_gain(eta, 0.001).value;
        for (int i = 2; i < 1000; ++i) {
            double t = i / 1000.0;
            double g = analytic_gain(eta, t).value;
            EXPECT_LT(g, prev);
            EXPECT_GT(g, 0.0);
            EXPECT_LE(g, 1.0 / eta);
            prev = g;
        }
    }
}

TEST(ThresholdCheck, examples) {
    EXPECT_TRUE(gain_threshold_check(0.3, 0.49));
    EXPECT_FALSE(gain_threshold_check(0.3, 0.5));
    EXPECT_FALSE(gain_threshold_check(0.9, 0.51));
    EXPECT_THROW(gain_threshold_check(1.0, 0.2), ConfigError);
    EXPECT_THROW(gain_threshold_check(0.0, 0.2), ConfigError);
}

TEST(ThresholdCheck, equals_t_below_half_everywhere) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200000; ++i) {
        double eta = unit(rng);
        double t = unit(rng);
        if (eta == 0.0) {
            continue;
        }
        ASSERT_EQ(gain_threshold_check(eta, t), t < 0.5) << eta << " " << t;
    }
    for (double t : {std::nextafter(0.5, 0.0), 0.5, std::nextafter(0.5, 1.0)}) {
        for (double eta : {1e-9, 0.3, 0.999999}) {
            EXPECT_EQ(gain_threshold_check(eta, t), t < 0.5);
        }
    }
    // away from rounding, the gain itself agrees
    for (double eta : {0.1, 0.5, 0.9}) {
        EXPECT_GT(analytic_gain(eta, 0.499).value, 1.0);
        EXPECT_LT(analytic_gain(eta, 0.501).value, 1.0);
    }
}

TEST(SuccessProb, values) {
    for (double eta : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(analytic_success_prob(eta, 0.5, 3).value, 0.125, 1e-15);
        EXPECT_EQ(analytic_success_prob(eta, 0.0, 4).value, 0.0);
    }
    EXPECT_NEAR(analytic_success_prob(0.2, 0.3, 3).value, 0.2 * 0.09 * 0.7 + 0.8 * 0.027, 1e-15);
    EXPECT_NEAR(analytic_success_prob(0.2, 0.3, 3).value, 0.0342, 1e-15);
    EXPECT_THROW(analytic_success_prob(0.2, 0.3, 1), ConfigError);
}

TEST(SuccessProb, decreases_with_mode_count) {
    for (double eta : {0.2, 0.8}) {
        for (double t : {0.1, 0.5, 0.9}) {
            for (int n = 2; n < 8; ++n) {
                EXPECT_GT(analytic_success_prob(eta, t, n).value, analytic_success_prob(eta, t, n + 1).value);
            }
        }
    }
}

TEST(EtaPrime, values) {
    EXPECT_NEAR(analytic_eta_prime(0.5, 0.5, 3).value, 0.5, 1e-15);
    for (double t : {0.1, 0.5, 0.9}) {
        EXPECT_EQ(analytic_eta_prime(1.0, t, 4).value, 1.0);
    }
    EXPECT_NEAR(analytic_eta_prime(0.2, 0.3, 3).value, 0.0126 / 0.0342, 1e-15);
    EXPECT_NEAR(analytic_eta_prime(0.2, 0.3, 3).value, 0.368421052632, 1e-12);
    auto lim = analytic_eta_prime(0.3, 0.0, 3);
    EXPECT_EQ(lim.value, 1.0);
    EXPECT_TRUE(lim.limit);
    EXPECT_THROW(analytic_eta_prime(0.0, 0.0, 3), ConfigError);
    EXPECT_EQ(analytic_eta_prime(0.0, 0.4, 3).value, 0.0);
}

TEST(EtaPrime, independent_of_mode_count) {
    for (double eta : {0.1, 0.35, 0.9}) {
        for (double t : {0.05, 0.3, 0.7, 0.95}) {
            double ref = analytic_eta_prime(eta, t, 2).value;
            for (int n = 3; n <= 12; ++n) {
                EXPECT_NEAR(analytic_eta_prime(eta, t, n).value, ref, 1e-15);
            }
            EXPECT_NEAR(analytic_eta_prime(eta, t, 3).value / eta, analytic_gain(eta, t).value, 1e-12);
        }
    }
}

TEST(CurvePoint, carries_parameters) {
    auto p = evaluate_point(Quantity::success_prob, 0.2, 0.5, 4);
    EXPECT_EQ(p.n, 4);
    EXPECT_EQ(p.eta, 0.2);
    EXPECT_NEAR(p.value, 0.0625, 1e-15);
    EXPECT_EQ(p.kind, Quantity::success_prob);
    EXPECT_STREQ(quantity_name(Quantity::gain), "gain");
}
