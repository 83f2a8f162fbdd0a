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

// Sparse Fock-space state algebra over a labelled set of bosonic modes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nla {

/// Raised for invalid parameters, unknown modes and mismatched registries.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Amplitude = std::complex<double>;

/// Occupation counts per mode. Counts never exceed a few photons here.
using Occupations = std::vector<std::uint8_t>;

/// Amplitudes with magnitude below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-14;

/// Tolerance on Σ|amp|² for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-12;

struct ModeId {
    std::size_t index = 0;
    std::string label;
};

/// Ordered, duplicate-free list of mode labels. Indices are dense 0..M-1.
class ModeRegistry {
public:
    ModeRegistry() = default;

    explicit ModeRegistry(std::vector<std::string> labels) : labels_(std::move(labels)) {
        std::set<std::string_view> seen;
        for (const auto &l : labels_) {
            if (l.empty()) {
                throw ConfigError("mode label must be non-empty");
            }
            if (!seen.insert(l).second) {
                throw ConfigError("duplicate mode label '" + l + "'");
            }
        }
    }

    /// Registry labelled prefix1..prefixN (prefix0..prefix{N-1} when !one_based).
    static ModeRegistry numbered(std::string_view prefix, std::size_t count, bool one_based = true) {
        std::vector<std::string> labels;
        labels.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            labels.push_back(std::string(prefix) + std::to_string(one_based ? i + 1 : i));
        }
        return ModeRegistry(std::move(labels));
    }

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(std::size_t i) const { return labels_.at(i); }

    ModeId at(std::size_t index) const {
        if (index >= labels_.size()) {
            throw ConfigError("mode index " + std::to_string(index) + " out of range");
        }
        return {index, labels_[index]};
    }

    ModeId find(std::string_view label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw ConfigError("unknown mode '" + std::string(label) + "'");
        }
        return {static_cast<std::size_t>(it - labels_.begin()), *it};
    }

    /// Validates that `mode` names an entry of this registry (index and label agree).
    std::size_t resolve(const ModeId &mode) const {
        if (mode.index >= labels_.size() || (!mode.label.empty() && labels_[mode.index] != mode.label)) {
            throw ConfigError("unknown mode '" + mode.label + "' (index " + std::to_string(mode.index) + ")");
        }
        return mode.index;
    }

    bool operator==(const ModeRegistry &) const = default;

private:
    std::vector<std::string> labels_;
};

inline unsigned total_photons(const Occupations &occ) {
    unsigned n = 0;
    for (auto c : occ) {
        n += c;
    }
    return n;
}

/// Immutable sparse superposition Σ amp |occ⟩. Terms are kept in lexicographic
/// order of their occupation vectors; amplitudes below the prune threshold are
/// never stored.
class PureState {
public:
    using TermMap = std::map<Occupations, Amplitude>;

    PureState() = default;

    PureState(ModeRegistry modes, TermMap terms) : modes_(std::move(modes)) {
        for (auto &[occ, amp] : terms) {
            if (occ.size() != modes_.size()) {
                throw ConfigError("occupation vector length " + std::to_string(occ.size()) +
                                  " does not match mode count " + std::to_string(modes_.size()));
            }
            if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
                throw ConfigError("non-finite amplitude");
            }
            if (std::abs(amp) >= kPruneThreshold) {
                terms_.emplace(occ, amp);
            }
        }
    }

    const ModeRegistry &modes() const { return modes_; }
    std::size_t mode_count() const { return modes_.size(); }
    const TermMap &terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Amplitude of a basis state; zero when absent.
    Amplitude amplitude(const Occupations &occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? Amplitude{} : it->second;
    }

    /// Σ|amp|². For heralded (post-measurement) states this is the branch weight.
    double weight() const {
        double w = 0.0;
        for (const auto &[occ, amp] : terms_) {
            w += std::norm(amp);
        }
        return w;
    }

    double norm() const { return std::sqrt(weight()); }

    bool is_normalized() const { return std::abs(weight() - 1.0) <= kNormTolerance; }

    PureState normalized() const {
        double n = norm();
        if (n == 0.0) {
            throw ConfigError("cannot normalize a zero-norm state");
        }
        TermMap out;
        for (const auto &[occ, amp] : terms_) {
            out.emplace(occ, amp / n);
        }
        return PureState(modes_, std::move(out));
    }

    PureState scaled(Amplitude factor) const {
        TermMap out;
        for (const auto &[occ, amp] : terms_) {
            out.emplace(occ, amp * factor);
        }
        return PureState(modes_, std::move(out));
    }

    /// Same amplitudes over a registry with different labels but equal size.
    PureState relabeled(ModeRegistry modes) const {
        if (modes.size() != modes_.size()) {
            throw ConfigError("relabel needs the same number of modes");
        }
        return PureState(std::move(modes), terms_);
    }

private:
    ModeRegistry modes_;
    TermMap terms_;
};

/// Probability-weighted ensemble of normalized pure branches over one registry.
class MixedState {
public:
    struct Branch {
        double probability;
        PureState state;
    };

    MixedState() = default;

    explicit MixedState(std::vector<Branch> branches) : branches_(std::move(branches)) {
        if (branches_.empty()) {
            throw ConfigError("mixed state needs at least one branch");
        }
        double total = 0.0;
        for (const auto &b : branches_) {
            if (!(b.probability >= 0.0 && b.probability <= 1.0)) {
                throw ConfigError("branch probability outside [0,1]");
            }
            if (!b.state.is_normalized()) {
                throw ConfigError("mixed-state branches must be normalized");
            }
            if (!(b.state.modes() == branches_.front().state.modes())) {
                throw ConfigError("mixed-state branches must share one registry");
            }
            total += b.probability;
        }
        if (std::abs(total - 1.0) > kNormTolerance) {
            throw ConfigError("branch probabilities must sum to 1");
        }
    }

    const std::vector<Branch> &branches() const { return branches_; }
    const ModeRegistry &modes() const { return branches_.front().state.modes(); }

private:
    std::vector<Branch> branches_;
};

inline PureState make_vacuum(const ModeRegistry &modes) {
    if (modes.empty()) {
        throw ConfigError("vacuum needs a non-empty registry");
    }
    return PureState(modes, {{Occupations(modes.size(), 0), Amplitude{1.0}}});
}

/// Adds one photon to `mode` in every term: |n⟩ → |n+1⟩ (creation operator
/// followed by the 1/√(n+1) rescale, so unit kets stay unit kets).
inline PureState create_photon(const PureState &state, const ModeId &mode) {
    std::size_t k = state.modes().resolve(mode);
    PureState::TermMap out;
    for (const auto &[key, amp] : state.terms()) {
        Occupations occ = key;
        if (occ[k] == std::numeric_limits<std::uint8_t>::max()) {
            throw std::overflow_error("occupation overflow on mode '" + state.modes().label(k) + "'");
        }
        ++occ[k];
        out.emplace(std::move(occ), amp);
    }
    return PureState(state.modes(), std::move(out));
}

inline PureState create_photon(const PureState &state, std::string_view label) {
    return create_photon(state, state.modes().find(label));
}

/// |s1⟩ ⊗ |s2⟩ with registry s1.modes ++ s2.modes.
inline PureState tensor(const PureState &s1, const PureState &s2) {
    std::vector<std::string> labels = s1.modes().labels();
    labels.insert(labels.end(), s2.modes().labels().begin(), s2.modes().labels().end());
    ModeRegistry joined(std::move(labels));  // throws on overlapping labels

    PureState::TermMap out;
    for (const auto &[o1, a1] : s1.terms()) {
        for (const auto &[o2, a2] : s2.terms()) {
            Occupations occ = o1;
            occ.insert(occ.end(), o2.begin(), o2.end());
            out.emplace(std::move(occ), a1 * a2);
        }
    }
    return PureState(std::move(joined), std::move(out));
}

/// ⟨s1|s2⟩, conjugate-linear in s1.
inline Amplitude inner_product(const PureState &s1, const PureState &s2) {
    if (!(s1.modes() == s2.modes())) {
        throw ConfigError("inner product over different registries");
    }
    Amplitude acc{};
    const auto &small = s1.term_count() <= s2.term_count() ? s1 : s2;
    const auto &large = &small == &s1 ? s2 : s1;
    for (const auto &[occ, amp] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it != large.terms().end()) {
            acc += &small == &s1 ? std::conj(amp) * it->second : std::conj(it->second) * amp;
        }
    }
    return acc;
}

/// |⟨target|s/‖s‖⟩|², independent of the global phase and weight of `s`.
inline double fidelity(const PureState &s, const PureState &target) {
    double w = s.weight();
    if (w == 0.0) {
        throw ConfigError("fidelity of a zero-norm state");
    }
    double f = std::norm(inner_product(target, s)) / (w * target.weight());
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace nla
