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

// End-to-end amplifier for an N-mode single-photon W state:
//
//   W(N) on a1..aN --loss(eta)--> mixture of W and vacuum
//   party k prepares |1> in its ancilla input (k1), VBS(t) splits it into
//   k1 (transmitted) and k2 (reflected); a 50:50 splitter mixes k1 with the
//   signal a_k and its two outputs (plus -> k1, minus -> a_k) are detected.
//   Runs where every splitter pair registers exactly one photon are kept;
//   the heralded state lives on the reflected modes k2.
//
// Party k (0-based) uses the letter 'b' + k, so N = 3 gives the mode names
// b1 b2, c1 c2, d1 d2 next to a1 a2 a3.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nla/analytics.hpp"
#include "nla/fock.hpp"
#include "nla/optics.hpp"

namespace nla {

inline constexpr int kMaxParties = 16;

struct ProtocolConfig {
    int n_modes = 3;
    double eta = 0.5;
    double t = 0.5;

    void validate() const {
        if (n_modes < 2) {
            throw ConfigError("need at least 2 modes, got " + std::to_string(n_modes));
        }
        if (n_modes > kMaxParties) {
            throw ConfigError("at most " + std::to_string(kMaxParties) + " modes are supported");
        }
        if (!(eta >= 0.0 && eta <= 1.0)) {
            throw ConfigError("eta must lie in [0,1], got " + std::to_string(eta));
        }
        if (!(t >= 0.0 && t <= 1.0)) {
            throw ConfigError("t must lie in [0,1], got " + std::to_string(t));
        }
    }
};

/// Knobs that are not part of the physical configuration. The per-party
/// override exists so tests can mis-sign one splitter and watch checks fail
/// (flipping every splitter the same way only adds mode phases that the
/// heralded state cannot see).
struct SimulationOptions {
    TwoModeElement combiner = make_bs50();
    std::map<int, TwoModeElement> combiner_overrides;  // keyed by 0-based party
    bool phase_correction = true;
};

/// Mode names used by the pipeline for N parties.
struct ProtocolLayout {
    std::vector<std::string> signal;       // a1..aN
    std::vector<std::string> transmitted;  // b1, c1, ... (plus detector after the splitter)
    std::vector<std::string> reflected;    // b2, c2, ... (kept)

    explicit ProtocolLayout(int n) {
        for (int k = 0; k < n; ++k) {
            std::string letter(1, static_cast<char>('b' + k));
            signal.push_back("a" + std::to_string(k + 1));
            transmitted.push_back(letter + "1");
            reflected.push_back(letter + "2");
        }
    }

    int parties() const { return static_cast<int>(signal.size()); }
};

inline PureState build_w_state(const ModeRegistry &modes) {
    if (modes.size() < 2) {
        throw ConfigError("W state needs at least 2 modes");
    }
    std::size_t n = modes.size();
    Amplitude amp{1.0 / std::sqrt(static_cast<double>(n))};
    PureState::TermMap terms;
    for (std::size_t k = 0; k < n; ++k) {
        Occupations occ(n, 0);
        occ[k] = 1;
        terms.emplace(std::move(occ), amp);
    }
    return PureState(modes, std::move(terms));
}

/// 1/√n (|10…0⟩ + |01…0⟩ + … + |0…01⟩) on modes a1..an.
inline PureState build_w_state(int n) {
    if (n < 2) {
        throw ConfigError("W state needs at least 2 modes, got " + std::to_string(n));
    }
    return build_w_state(ModeRegistry::numbered("a", static_cast<std::size_t>(n)));
}

/// Feed-forward correction: a π phase on kept mode k for every pair k whose
/// minus-port detector fired, which makes the heralded state independent of
/// the click pattern.
inline PureState phase_correct(const PureState &state, const DetectionPattern &pattern) {
    if (state.mode_count() != pattern.pair_count()) {
        throw ConfigError("phase correction needs one kept mode per detector pair");
    }
    PureState out = state;
    for (std::size_t k = 0; k < pattern.pair_count(); ++k) {
        if (pattern.click(k) == Port::minus) {
            out = apply_phase(out, out.modes().at(k), std::numbers::pi);
        }
    }
    return out;
}

/// One loss branch carried through the optics, right before detection.
struct OpticalBranch {
    double probability = 0.0;
    bool signal = false;  // true for the W branch, false for the vacuum branch
    PureState state;
};

struct PreparedNetwork {
    ProtocolLayout layout;
    std::vector<OpticalBranch> branches;
    std::vector<DetectorPair> pairs;  // (plus, minus) per party
};

/// Steps before detection: W state, loss, ancilla photons, VBS, 50:50 splitter.
inline PreparedNetwork prepare_network(const ProtocolConfig &cfg, const SimulationOptions &opts = {}) {
    cfg.validate();
    ProtocolLayout layout(cfg.n_modes);
    MixedState lossy = loss_channel(build_w_state(cfg.n_modes), cfg.eta);

    std::vector<std::string> anc_labels;
    for (int k = 0; k < layout.parties(); ++k) {
        anc_labels.push_back(layout.transmitted[k]);
        anc_labels.push_back(layout.reflected[k]);
    }
    PureState ancillas = make_vacuum(ModeRegistry(anc_labels));
    for (const auto &label : layout.transmitted) {
        ancillas = create_photon(ancillas, label);
    }

    TwoModeElement vbs = make_vbs(cfg.t);
    PreparedNetwork net{layout, {}, {}};
    for (const auto &branch : lossy.branches()) {
        bool signal = total_photons(branch.state.terms().begin()->first) == 1;
        PureState s = tensor(branch.state, ancillas);
        const ModeRegistry modes = s.modes();
        for (int k = 0; k < layout.parties(); ++k) {
            s = apply_two_mode(s, vbs, modes.find(layout.transmitted[k]), modes.find(layout.reflected[k]));
        }
        for (int k = 0; k < layout.parties(); ++k) {
            auto it = opts.combiner_overrides.find(k);
            const TwoModeElement &bs = it == opts.combiner_overrides.end() ? opts.combiner : it->second;
            s = apply_two_mode(s, bs, modes.find(layout.transmitted[k]), modes.find(layout.signal[k]));
        }
        net.branches.push_back({branch.probability, signal, std::move(s)});
    }
    const auto &modes = net.branches.front().state.modes();
    for (int k = 0; k < layout.parties(); ++k) {
        net.pairs.emplace_back(modes.find(layout.transmitted[k]), modes.find(layout.signal[k]));
    }
    return net;
}

struct PatternResult {
    DetectionPattern pattern;
    std::uint64_t id = 0;
    /// Branch-weighted probability of this click pattern.
    double probability = 0.0;
    double signal_probability = 0.0;  // contribution of the W branch
    double vacuum_probability = 0.0;  // contribution of the vacuum branch
    /// Normalized heralded W-branch state on the kept modes, after (or, for
    /// `heralded_raw`, before) phase correction. Empty when the W branch cannot
    /// produce this pattern.
    std::optional<PureState> heralded;
    std::optional<PureState> heralded_raw;
    std::optional<PureState> heralded_vacuum;
    std::optional<double> fidelity;      // heralded vs W(N)
    std::optional<double> fidelity_raw;  // heralded_raw vs W(N)
};

struct ProtocolOutcome {
    ProtocolConfig config;
    double eta_prime = 0.0;
    double success_prob = 0.0;
    double gain = 0.0;
    bool eta_prime_is_limit = false;
    bool gain_is_limit = false;
    /// Branch-weighted probability of every detector record, accepted or not.
    double total_outcome_probability = 0.0;
    std::vector<PatternResult> per_pattern;
    /// {(eta', W), (1 - eta', vacuum)} on the kept modes.
    MixedState output_state;
};

inline ProtocolOutcome run_nla(const ProtocolConfig &cfg, const SimulationOptions &opts = {}) {
    PreparedNetwork net = prepare_network(cfg, opts);
    ModeRegistry kept(net.layout.reflected);
    PureState target = build_w_state(kept);

    ProtocolOutcome out;
    out.config = cfg;
    double signal_total = 0.0;
    for (const auto &branch : net.branches) {
        for (const auto &[pattern, prob] : outcome_distribution(branch.state, net.pairs)) {
            out.total_outcome_probability += branch.probability * prob;
        }
    }

    for (const auto &pattern : accepted_patterns(net.pairs.size())) {
        PatternResult r;
        r.pattern = pattern;
        r.id = pattern.id();
        for (const auto &branch : net.branches) {
            Projection proj = project_pattern(branch.state, net.pairs, pattern);
            double weighted = branch.probability * proj.probability;
            r.probability += weighted;
            if (proj.probability == 0.0) {
                continue;
            }
            PureState raw = proj.remainder.normalized();
            PureState corrected = opts.phase_correction ? phase_correct(raw, pattern) : raw;
            if (branch.signal) {
                r.signal_probability += weighted;
                r.fidelity = fidelity(corrected, target);
                r.fidelity_raw = fidelity(raw, target);
                r.heralded = std::move(corrected);
                r.heralded_raw = std::move(raw);
            } else {
                r.vacuum_probability += weighted;
                r.heralded_vacuum = std::move(corrected);
            }
        }
        out.success_prob += r.probability;
        signal_total += r.signal_probability;
        out.per_pattern.push_back(std::move(r));
    }

    if (out.success_prob > 0.0) {
        out.eta_prime = signal_total / out.success_prob;
    } else {
        // nothing is ever heralded (t = 0); fall back to the continuous limit
        out.eta_prime = cfg.eta > 0.0 ? analytic_eta_prime(cfg.eta, cfg.t, cfg.n_modes).value : 0.0;
        out.eta_prime_is_limit = true;
    }
    if (cfg.eta > 0.0) {
        out.gain = out.eta_prime / cfg.eta;
        out.gain_is_limit = out.eta_prime_is_limit;
    } else {
        out.gain = analytic_gain(0.0, cfg.t).value;
        out.gain_is_limit = true;
    }

    std::vector<MixedState::Branch> mix;
    if (out.eta_prime > 0.0) {
        mix.push_back({out.eta_prime, target});
    }
    if (out.eta_prime < 1.0) {
        mix.push_back({1.0 - out.eta_prime, make_vacuum(kept)});
    }
    out.output_state = MixedState(std::move(mix));
    return out;
}

struct SampleReport {
    ProtocolConfig config;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t accepted_signal = 0;
    double p_hat = 0.0;
    double p_se = 0.0;
    /// NaN when no shot was accepted.
    double eta_prime_hat = 0.0;
    double eta_prime_se = 0.0;
    double gain_hat = 0.0;
    double gain_se = 0.0;
};

namespace detail {

/// Cumulative table over detector records for one optical branch.
struct OutcomeSampler {
    std::vector<double> cumulative;
    std::vector<bool> accepted;

    explicit OutcomeSampler(const std::vector<std::pair<DetectionPattern, double>> &dist) {
        double acc = 0.0;
        for (const auto &[pattern, prob] : dist) {
            acc += prob;
            cumulative.push_back(acc);
            accepted.push_back(pattern.accepted());
        }
    }

    bool draw_accepted(double u) const {
        u *= cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t k = std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1);
        return accepted[k];
    }
};

inline double unit_draw(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline constexpr std::uint64_t kShotBlock = 1 << 16;

}  // namespace detail

/// Monte Carlo run: per shot, draw the loss branch, then a complete detector
/// record from that branch's exact outcome distribution. Shots are split into
/// fixed-size blocks with one seeded stream each, so the result depends on
/// `seed` only and not on how many worker threads run.
inline SampleReport sample_run(const ProtocolConfig &cfg, std::uint64_t shots, std::uint64_t seed,
                               unsigned workers = 0) {
    if (shots == 0) {
        throw ConfigError("need at least one shot");
    }
    PreparedNetwork net = prepare_network(cfg);
    std::optional<detail::OutcomeSampler> signal_sampler;
    std::optional<detail::OutcomeSampler> vacuum_sampler;
    for (const auto &branch : net.branches) {
        auto &slot = branch.signal ? signal_sampler : vacuum_sampler;
        slot.emplace(outcome_distribution(branch.state, net.pairs));
    }

    std::uint64_t blocks = (shots + detail::kShotBlock - 1) / detail::kShotBlock;
    std::vector<std::uint64_t> acc(blocks, 0);
    std::vector<std::uint64_t> acc_signal(blocks, 0);
    auto run_block = [&](std::uint64_t b) {
        std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                           static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(sseq);
        std::uint64_t begin = b * detail::kShotBlock;
        std::uint64_t end = std::min(shots, begin + detail::kShotBlock);
        for (std::uint64_t s = begin; s < end; ++s) {
            bool signal = detail::unit_draw(rng) < cfg.eta;
            const auto &sampler = signal ? signal_sampler : vacuum_sampler;
            if (sampler->draw_accepted(detail::unit_draw(rng))) {
                ++acc[b];
                acc_signal[b] += signal ? 1 : 0;
            }
        }
    };

    if (workers == 0) {
        workers = std::max(1U, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < blocks; b += workers) {
                    run_block(b);
                }
            });
        }
    }

    SampleReport r;
    r.config = cfg;
    r.shots = shots;
    r.seed = seed;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        r.accepted += acc[b];
        r.accepted_signal += acc_signal[b];
    }
    double n = static_cast<double>(shots);
    r.p_hat = static_cast<double>(r.accepted) / n;
    r.p_se = std::sqrt(r.p_hat * (1.0 - r.p_hat) / n);
    if (r.accepted > 0) {
        double k = static_cast<double>(r.accepted);
        r.eta_prime_hat = static_cast<double>(r.accepted_signal) / k;
        r.eta_prime_se = std::sqrt(r.eta_prime_hat * (1.0 - r.eta_prime_hat) / k);
    } else {
        r.eta_prime_hat = r.eta_prime_se = std::numeric_limits<double>::quiet_NaN();
    }
    if (cfg.eta > 0.0) {
        r.gain_hat = r.eta_prime_hat / cfg.eta;
        r.gain_se = r.eta_prime_se / cfg.eta;
    } else {
        r.gain_hat = r.gain_se = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace nla
