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

// JSON encoding of states:
//   pure:  {"modes": [labels], "terms": [{"occ": [ints], "re": f, "im": f}]}
//   mixed: {"modes": [labels], "branches": [{"prob": f, "terms": [...]}]}
// Terms are emitted in lexicographic basis order.

#include <json.hpp>

#include "nla/fock.hpp"

namespace nla {

inline nlohmann::json terms_to_json(const PureState &state) {
    auto terms = nlohmann::json::array();
    for (const auto &[occ, amp] : state.terms()) {
        std::vector<int> counts(occ.begin(), occ.end());
        terms.push_back({{"occ", counts}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return terms;
}

inline nlohmann::json to_json(const PureState &state) {
    return {{"modes", state.modes().labels()}, {"terms", terms_to_json(state)}};
}

inline nlohmann::json to_json(const MixedState &state) {
    auto branches = nlohmann::json::array();
    for (const auto &b : state.branches()) {
        branches.push_back({{"prob", b.probability}, {"terms", terms_to_json(b.state)}});
    }
    return {{"modes", state.modes().labels()}, {"branches", branches}};
}

namespace detail {

inline PureState::TermMap terms_from_json(const nlohmann::json &terms, std::size_t mode_count) {
    PureState::TermMap out;
    for (const auto &t : terms) {
        Occupations occ;
        for (int c : t.at("occ").get<std::vector<int>>()) {
            if (c < 0 || c > std::numeric_limits<std::uint8_t>::max()) {
                throw ConfigError("occupation out of range in JSON");
            }
            occ.push_back(static_cast<std::uint8_t>(c));
        }
        if (occ.size() != mode_count) {
            throw ConfigError("occupation length mismatch in JSON");
        }
        if (!out.emplace(std::move(occ), Amplitude{t.at("re").get<double>(), t.at("im").get<double>()}).second) {
            throw ConfigError("duplicate basis state in JSON");
        }
    }
    return out;
}

}  // namespace detail

inline PureState pure_state_from_json(const nlohmann::json &j) {
    ModeRegistry modes(j.at("modes").get<std::vector<std::string>>());
    auto terms = detail::terms_from_json(j.at("terms"), modes.size());
    return PureState(std::move(modes), std::move(terms));
}

inline MixedState mixed_state_from_json(const nlohmann::json &j) {
    ModeRegistry modes(j.at("modes").get<std::vector<std::string>>());
    std::vector<MixedState::Branch> branches;
    for (const auto &b : j.at("branches")) {
        branches.push_back({b.at("prob").get<double>(),
                            PureState(modes, detail::terms_from_json(b.at("terms"), modes.size()))});
    }
    return MixedState(std::move(branches));
}

}  // namespace nla
