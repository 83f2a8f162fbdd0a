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

// Linear-optical elements acting exactly on sparse Fock states, plus the
// branch-wise loss channel and number-resolving projective detection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nla/fock.hpp"

namespace nla {

/// 2x2 transform on creation operators: a†_in,i → Σ_j matrix[j][i] a†_out,j.
/// Output j is written back into the slot of input mode j.
struct TwoModeElement {
    using Matrix = std::array<std::array<Amplitude, 2>, 2>;

    Matrix matrix{};

    /// max |(U†U - I)_ij|
    double unitarity_error() const {
        double err = 0.0;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                Amplitude s{};
                for (int k = 0; k < 2; ++k) {
                    s += std::conj(matrix[k][r]) * matrix[k][c];
                }
                err = std::max(err, std::abs(s - Amplitude(r == c ? 1.0 : 0.0)));
            }
        }
        return err;
    }

    bool is_unitary(double tol = 1e-12) const { return unitarity_error() <= tol; }
};

/// Variable beam splitter with transmission t. Input 0 carries the photon,
/// input 1 is the vacuum port; output 0 is the transmitted mode and output 1
/// the reflected mode: |1,0⟩ → √t|1,0⟩ + √(1-t)|0,1⟩. The second column is
/// the unitary completion that equals the 50:50 splitter at t = 1/2.
inline TwoModeElement make_vbs(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw ConfigError("VBS transmission must lie in [0,1], got " + std::to_string(t));
    }
    double tr = std::sqrt(t);
    double rf = std::sqrt(1.0 - t);
    return {{{{tr, rf}, {rf, -tr}}}};
}

/// Balanced splitter. Inputs: (ancilla transmitted mode, signal mode).
/// Outputs: (plus-port detector, minus-port detector). A photon in input 1
/// picks up the minus sign on the minus port.
inline TwoModeElement make_bs50() {
    constexpr double h = 1.0 / std::numbers::sqrt2;
    return {{{{h, h}, {h, -h}}}};
}

namespace detail {

inline double factorial(unsigned n) {
    double f = 1.0;
    for (unsigned k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

inline double binomial(unsigned n, unsigned k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

inline Amplitude ipow(Amplitude base, unsigned e) {
    Amplitude r{1.0};
    for (unsigned k = 0; k < e; ++k) {
        r *= base;
    }
    return r;
}

}  // namespace detail

/// Applies `elem` to modes (first, second). Each term |m,n⟩ on those modes
/// becomes (m! n!)^{-1/2} (U00 a0† + U10 a1†)^m (U01 a0† + U11 a1†)^n |0,0⟩.
inline PureState apply_two_mode(const PureState &state, const TwoModeElement &elem, const ModeId &first,
                                const ModeId &second) {
    if (!elem.is_unitary()) {
        throw ConfigError("two-mode element is not unitary");
    }
    std::size_t i = state.modes().resolve(first);
    std::size_t j = state.modes().resolve(second);
    if (i == j) {
        throw ConfigError("two-mode element needs two distinct modes");
    }
    const auto &U = elem.matrix;

    PureState::TermMap out;
    for (const auto &[occ, amp] : state.terms()) {
        unsigned m = occ[i];
        unsigned n = occ[j];
        unsigned total = m + n;
        // coefficient of (a0†)^k (a1†)^(total-k) in the product of the two powers
        std::vector<Amplitude> poly(total + 1, Amplitude{});
        for (unsigned p = 0; p <= m; ++p) {
            Amplitude cp = detail::binomial(m, p) * detail::ipow(U[0][0], p) * detail::ipow(U[1][0], m - p);
            for (unsigned q = 0; q <= n; ++q) {
                Amplitude cq = detail::binomial(n, q) * detail::ipow(U[0][1], q) * detail::ipow(U[1][1], n - q);
                poly[p + q] += cp * cq;
            }
        }
        double in_norm = std::sqrt(detail::factorial(m) * detail::factorial(n));
        for (unsigned k = 0; k <= total; ++k) {
            if (poly[k] == Amplitude{}) {
                continue;
            }
            Occupations next = occ;
            next[i] = static_cast<std::uint8_t>(k);
            next[j] = static_cast<std::uint8_t>(total - k);
            double out_norm = std::sqrt(detail::factorial(k) * detail::factorial(total - k));
            out[next] += amp * poly[k] * (out_norm / in_norm);
        }
    }
    return PureState(state.modes(), std::move(out));
}

/// Each term acquires e^{i·phase·n_mode}.
inline PureState apply_phase(const PureState &state, const ModeId &mode, double phase) {
    std::size_t k = state.modes().resolve(mode);
    PureState::TermMap out;
    for (const auto &[occ, amp] : state.terms()) {
        out.emplace(occ, amp * std::polar(1.0, phase * occ[k]));
    }
    return PureState(state.modes(), std::move(out));
}

/// Shared-photon loss: keeps the state with probability eta, otherwise leaves
/// vacuum on every mode. Only defined on the ≤1-photon subspace, where it
/// coincides with independent per-mode loss. Zero-probability branches are
/// omitted.
inline MixedState loss_channel(const PureState &state, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ConfigError("loss survival probability must lie in [0,1]");
    }
    if (!state.is_normalized()) {
        throw ConfigError("loss channel needs a normalized input");
    }
    for (const auto &[occ, amp] : state.terms()) {
        if (total_photons(occ) > 1) {
            throw ConfigError("loss channel is only defined for at most one photon per term");
        }
    }
    std::vector<MixedState::Branch> branches;
    if (eta > 0.0) {
        branches.push_back({eta, state});
    }
    if (eta < 1.0) {
        branches.push_back({1.0 - eta, make_vacuum(state.modes())});
    }
    return MixedState(std::move(branches));
}

enum class Port : std::uint8_t { plus, minus };

/// Photon counts seen by the two detectors of one splitter pair.
struct PairCounts {
    std::uint8_t plus = 0;
    std::uint8_t minus = 0;
    bool operator==(const PairCounts &) const = default;
};

/// Detector record for a list of splitter pairs. Accepted patterns have
/// exactly one photon per pair; their canonical id orders pairs by index
/// (pair 0 most significant) with plus before minus, giving 0..2^N-1.
class DetectionPattern {
public:
    DetectionPattern() = default;
    explicit DetectionPattern(std::vector<PairCounts> counts) : counts_(std::move(counts)) {}

    static DetectionPattern from_clicks(std::span<const Port> clicks) {
        std::vector<PairCounts> counts;
        counts.reserve(clicks.size());
        for (Port p : clicks) {
            counts.push_back(p == Port::plus ? PairCounts{1, 0} : PairCounts{0, 1});
        }
        return DetectionPattern(std::move(counts));
    }

    static DetectionPattern accepted_from_id(std::size_t pairs, std::uint64_t id) {
        if (pairs >= 64 || id >> pairs != 0) {
            throw ConfigError("pattern id out of range");
        }
        std::vector<Port> clicks(pairs);
        for (std::size_t k = 0; k < pairs; ++k) {
            clicks[k] = (id >> (pairs - 1 - k)) & 1U ? Port::minus : Port::plus;
        }
        return from_clicks(clicks);
    }

    const std::vector<PairCounts> &counts() const { return counts_; }
    std::size_t pair_count() const { return counts_.size(); }

    bool accepted() const {
        return std::all_of(counts_.begin(), counts_.end(),
                           [](PairCounts c) { return c.plus + c.minus == 1; });
    }

    /// Which port clicked on pair k; requires an accepted pattern.
    Port click(std::size_t k) const {
        const auto &c = counts_.at(k);
        if (c.plus + c.minus != 1) {
            throw ConfigError("pair " + std::to_string(k) + " did not register exactly one photon");
        }
        return c.plus == 1 ? Port::plus : Port::minus;
    }

    std::uint64_t id() const {
        std::uint64_t v = 0;
        for (std::size_t k = 0; k < counts_.size(); ++k) {
            v = (v << 1) | (click(k) == Port::minus ? 1U : 0U);
        }
        return v;
    }

    /// "+-+" style rendering; rejected pairs print their counts as "(p,m)".
    std::string str() const {
        std::string s;
        for (const auto &c : counts_) {
            if (c.plus + c.minus == 1) {
                s += c.plus == 1 ? '+' : '-';
            } else {
                s += "(" + std::to_string(c.plus) + "," + std::to_string(c.minus) + ")";
            }
        }
        return s;
    }

    bool operator==(const DetectionPattern &) const = default;

private:
    std::vector<PairCounts> counts_;
};

/// All 2^pairs accepted patterns in canonical id order.
inline std::vector<DetectionPattern> accepted_patterns(std::size_t pairs) {
    std::vector<DetectionPattern> out;
    out.reserve(std::size_t{1} << pairs);
    for (std::uint64_t id = 0; id < (std::uint64_t{1} << pairs); ++id) {
        out.push_back(DetectionPattern::accepted_from_id(pairs, id));
    }
    return out;
}

using DetectorPair = std::pair<ModeId, ModeId>;

struct Projection {
    double probability = 0.0;
    /// Kept superposition over the undetected modes, unnormalized (weight = probability).
    PureState remainder;
};

/// Projects the measured modes onto fixed photon counts and removes them
/// from the registry.
inline Projection project_modes(const PureState &state, std::span<const ModeId> measured,
                                std::span<const std::uint8_t> counts) {
    if (measured.size() != counts.size()) {
        throw ConfigError("measured-mode and count lists differ in length");
    }
    std::vector<bool> is_measured(state.mode_count(), false);
    std::vector<std::size_t> idx;
    for (const auto &m : measured) {
        std::size_t k = state.modes().resolve(m);
        if (is_measured[k]) {
            throw ConfigError("mode '" + state.modes().label(k) + "' measured twice");
        }
        is_measured[k] = true;
        idx.push_back(k);
    }
    std::vector<std::string> kept_labels;
    for (std::size_t k = 0; k < state.mode_count(); ++k) {
        if (!is_measured[k]) {
            kept_labels.push_back(state.modes().label(k));
        }
    }

    PureState::TermMap kept;
    for (const auto &[occ, amp] : state.terms()) {
        bool match = true;
        for (std::size_t r = 0; r < idx.size() && match; ++r) {
            match = occ[idx[r]] == counts[r];
        }
        if (!match) {
            continue;
        }
        Occupations rest;
        rest.reserve(kept_labels.size());
        for (std::size_t k = 0; k < occ.size(); ++k) {
            if (!is_measured[k]) {
                rest.push_back(occ[k]);
            }
        }
        kept.emplace(std::move(rest), amp);
    }
    PureState remainder(ModeRegistry(std::move(kept_labels)), std::move(kept));
    return {remainder.weight(), std::move(remainder)};
}

/// Number-resolving detection on a list of (plus, minus) detector pairs.
inline Projection project_pattern(const PureState &state, std::span<const DetectorPair> pairs,
                                  const DetectionPattern &pattern) {
    if (pairs.size() != pattern.pair_count()) {
        throw ConfigError("pattern has " + std::to_string(pattern.pair_count()) + " pairs, expected " +
                          std::to_string(pairs.size()));
    }
    std::vector<ModeId> measured;
    std::vector<std::uint8_t> counts;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        measured.push_back(pairs[k].first);
        measured.push_back(pairs[k].second);
        counts.push_back(pattern.counts()[k].plus);
        counts.push_back(pattern.counts()[k].minus);
    }
    return project_modes(state, measured, counts);
}

/// Every detector record that occurs with nonzero amplitude, with its
/// probability. Covers rejected outcomes as well as accepted ones.
inline std::vector<std::pair<DetectionPattern, double>> outcome_distribution(const PureState &state,
                                                                            std::span<const DetectorPair> pairs) {
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (const auto &[p, m] : pairs) {
        idx.emplace_back(state.modes().resolve(p), state.modes().resolve(m));
    }
    std::map<std::vector<std::uint8_t>, double> probs;
    for (const auto &[occ, amp] : state.terms()) {
        std::vector<std::uint8_t> key;
        key.reserve(2 * idx.size());
        for (auto [p, m] : idx) {
            key.push_back(occ[p]);
            key.push_back(occ[m]);
        }
        probs[key] += std::norm(amp);
    }
    std::vector<std::pair<DetectionPattern, double>> out;
    out.reserve(probs.size());
    for (const auto &[key, prob] : probs) {
        std::vector<PairCounts> counts;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            counts.push_back({key[2 * k], key[2 * k + 1]});
        }
        out.emplace_back(DetectionPattern(std::move(counts)), prob);
    }
    return out;
}

}  // namespace nla
