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
#include <random>

#include "gtest/gtest.h"

#include "nla/fock.hpp"
#include "nla/protocol.hpp"
#include "nla/serialize.hpp"

using namespace nla;

namespace {

/// Random state over `modes` with up to `max_terms` terms and occupations < 3.
PureState random_state(std::mt19937_64 &rng, const ModeRegistry &modes, int max_terms) {
    std::uniform_int_distribution<int> occ_dist(0, 2);
    std::uniform_int_distribution<int> count_dist(1, max_terms);
    std::normal_distribution<double> amp_dist;
    PureState::TermMap terms;
    int count = count_dist(rng);
    for (int i = 0; i < count; ++i) {
        Occupations occ(modes.size());
        for (auto &c : occ) {
            c = static_cast<std::uint8_t>(occ_dist(rng));
        }
        terms[occ] = {amp_dist(rng), amp_dist(rng)};
    }
    return PureState(modes, std::move(terms)).normalized();
}

PureState single_photon_pair(const std::string &first, const std::string &second) {
    return create_photon(make_vacuum(ModeRegistry({first, second})), first);
}

}  // namespace

TEST(ModeRegistry, rejects_duplicates_and_unknown_labels) {
    EXPECT_THROW(ModeRegistry({"a1", "a1"}), ConfigError);
    ModeRegistry r({"a1", "b2"});
    EXPECT_EQ(r.find("b2").index, 1u);
    EXPECT_THROW(r.find("e1"), ConfigError);
    EXPECT_THROW(r.resolve(ModeId{1, "a1"}), ConfigError);
    EXPECT_THROW(r.at(2), ConfigError);
}

TEST(Vacuum, single_unit_term) {
    auto vac3 = make_vacuum(ModeRegistry::numbered("m", 3));
    ASSERT_EQ(vac3.term_count(), 1u);
    EXPECT_EQ(vac3.amplitude({0, 0, 0}), Amplitude(1.0));
    EXPECT_DOUBLE_EQ(vac3.norm(), 1.0);

    auto vac1 = make_vacuum(ModeRegistry({"x"}));
    EXPECT_EQ(vac1.amplitude({0}), Amplitude(1.0));
    EXPECT_THROW(make_vacuum(ModeRegistry()), ConfigError);
}

TEST(CreatePhoton, raises_occupation_keeping_unit_norm) {
    auto vac = make_vacuum(ModeRegistry({"p", "q"}));
    auto one = create_photon(vac, vac.modes().at(0));
    EXPECT_EQ(one.amplitude({1, 0}), Amplitude(1.0));
    auto two = create_photon(one, "p");
    ASSERT_EQ(two.term_count(), 1u);
    EXPECT_EQ(two.amplitude({2, 0}), Amplitude(1.0));
    EXPECT_THROW(create_photon(vac, "r"), ConfigError);

    auto ancillas = tensor(tensor(single_photon_pair("b1", "b2"), single_photon_pair("c1", "c2")),
                           single_photon_pair("d1", "d2"));
    EXPECT_NEAR(ancillas.norm(), 1.0, 1e-15);
}

TEST(CreatePhoton, maps_superpositions_termwise) {
    auto w = build_w_state(2);
    auto raised = create_photon(w, "a1");
    EXPECT_NEAR(raised.amplitude({2, 0}).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(raised.amplitude({1, 1}).real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(CreatePhoton, overflow_is_reported) {
    PureState full(ModeRegistry({"x"}), {{Occupations{255}, Amplitude{1.0}}});
    EXPECT_THROW(create_photon(full, "x"), std::overflow_error);
}

TEST(Tensor, w3_with_three_ancilla_photons) {
    auto state = tensor(build_w_state(3), tensor(tensor(single_photon_pair("b1", "b2"), single_photon_pair("c1", "c2")),
                                                 single_photon_pair("d1", "d2")));
    EXPECT_EQ(state.mode_count(), 9u);
    EXPECT_EQ(state.term_count(), 3u);
    EXPECT_NEAR(state.norm(), 1.0, 1e-15);
    EXPECT_NEAR(state.amplitude({1, 0, 0, 1, 0, 1, 0, 1, 0}).real(), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_EQ(state.modes().label(3), "b1");
}

TEST(Tensor, vacuum_with_vacuum_and_overlap_error) {
    auto v = tensor(make_vacuum(ModeRegistry({"x"})), make_vacuum(ModeRegistry({"y"})));
    EXPECT_EQ(v.amplitude({0, 0}), Amplitude(1.0));
    EXPECT_EQ(v.term_count(), 1u);
    EXPECT_THROW(tensor(build_w_state(2), build_w_state(3)), ConfigError);
}

TEST(InnerProduct, basics) {
    auto w = build_w_state(3);
    auto vac = make_vacuum(w.modes());
    EXPECT_NEAR(std::abs(inner_product(w, w) - Amplitude(1.0)), 0.0, 1e-15);
    EXPECT_EQ(inner_product(vac, w), Amplitude(0.0));
    EXPECT_THROW(inner_product(w, build_w_state(2)), ConfigError);

    // conjugate-linear in the first argument
    auto iw = w.scaled({0.0, 1.0});
    EXPECT_NEAR(std::abs(inner_product(iw, w) - Amplitude(0.0, -1.0)), 0.0, 1e-15);
}

TEST(InnerProduct, w3_matches_relabelled_heralded_ket) {
    // heralded ket on b2, c2, d2 with the common prefactor sqrt(t^2 (1-t) / 3)
    double t = 0.3;
    double c = std::sqrt(t * t * (1.0 - t) / 3.0);
    PureState heralded(ModeRegistry({"b2", "c2", "d2"}),
                       {{{1, 0, 0}, c}, {{0, 1, 0}, c}, {{0, 0, 1}, c}});
    auto relabelled = heralded.normalized().relabeled(build_w_state(3).modes());
    EXPECT_NEAR(std::abs(inner_product(build_w_state(3), relabelled)), 1.0, 1e-15);
}

TEST(Fidelity, basics) {
    auto w = build_w_state(3);
    EXPECT_NEAR(fidelity(w, w), 1.0, 1e-15);
    EXPECT_EQ(fidelity(make_vacuum(w.modes()), w), 0.0);
    EXPECT_NEAR(fidelity(w.scaled({0.0, -3.0}), w), 1.0, 1e-15);
    EXPECT_THROW(fidelity(PureState(w.modes(), {}), w), ConfigError);
}

TEST(PureState, prunes_tiny_amplitudes_and_rejects_non_finite) {
    PureState s(ModeRegistry({"x"}), {{Occupations{0}, 1.0}, {Occupations{1}, 5e-15}});
    EXPECT_EQ(s.term_count(), 1u);
    EXPECT_THROW(PureState(ModeRegistry({"x"}), {{Occupations{0}, std::nan("")}}), ConfigError);
    EXPECT_THROW(PureState(ModeRegistry({"x"}), {{Occupations{0, 1}, 1.0}}), ConfigError);
}

TEST(MixedState, validates_branches) {
    auto w = build_w_state(3);
    auto vac = make_vacuum(w.modes());
    EXPECT_NO_THROW(MixedState({{0.25, w}, {0.75, vac}}));
    EXPECT_THROW(MixedState({{0.25, w}, {0.7, vac}}), ConfigError);
    EXPECT_THROW(MixedState({{1.0, w.scaled(2.0)}}), ConfigError);
    EXPECT_THROW(MixedState({{0.5, w}, {0.5, build_w_state(ModeRegistry({"x", "y", "z"}))}}), ConfigError);
    EXPECT_THROW(MixedState(std::vector<MixedState::Branch>{}), ConfigError);
}

TEST(FockProperties, norm_preserved_by_create_and_tensor_from_vacuum) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> modes_dist(1, 4);
        int m1 = modes_dist(rng);
        int m2 = modes_dist(rng);
        auto s1 = make_vacuum(ModeRegistry::numbered("x", m1));
        auto s2 = make_vacuum(ModeRegistry::numbered("y", m2));
        std::uniform_int_distribution<int> ops(0, 4);
        for (int k = ops(rng); k > 0; --k) {
            s1 = create_photon(s1, s1.modes().at(rng() % m1));
        }
        for (int k = ops(rng); k > 0; --k) {
            s2 = create_photon(s2, s2.modes().at(rng() % m2));
        }
        EXPECT_NEAR(tensor(s1, s2).weight(), 1.0, 1e-12);
    }
}

TEST(FockProperties, inner_product_self_is_real_weight_and_cauchy_schwarz) {
    std::mt19937_64 rng(5);
    auto modes = ModeRegistry::numbered("m", 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_state(rng, modes, 6).scaled(0.5 + trial * 0.01);
        auto b = random_state(rng, modes, 6);
        Amplitude self = inner_product(a, a);
        EXPECT_EQ(self.imag(), 0.0);
        EXPECT_GE(self.real(), 0.0);
        EXPECT_NEAR(self.real(), a.weight(), 1e-12 * a.weight());
        EXPECT_LE(std::abs(inner_product(a, b)), a.norm() * b.norm() + 1e-12);
        EXPECT_NEAR(tensor(a, b.relabeled(ModeRegistry::numbered("n", 3))).norm(), a.norm() * b.norm(), 1e-12);
    }
}

TEST(FockProperties, tensor_is_associative) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_state(rng, ModeRegistry({"a"}), 3);
        auto b = random_state(rng, ModeRegistry({"b1", "b2"}), 4);
        auto c = random_state(rng, ModeRegistry({"c"}), 3);
        auto left = tensor(tensor(a, b), c);
        auto right = tensor(a, tensor(b, c));
        ASSERT_EQ(left.modes(), right.modes());
        ASSERT_EQ(left.term_count(), right.term_count());
        for (const auto &[occ, amp] : left.terms()) {
            EXPECT_LE(std::abs(amp - right.amplitude(occ)), 1e-15);
        }
    }
}

TEST(Serialization, layout_and_lexicographic_order) {
    auto j = to_json(build_w_state(3));
    EXPECT_EQ(j["modes"], nlohmann::json({"a1", "a2", "a3"}));
    ASSERT_EQ(j["terms"].size(), 3u);
    EXPECT_EQ(j["terms"][0]["occ"], nlohmann::json({0, 0, 1}));
    EXPECT_EQ(j["terms"][2]["occ"], nlohmann::json({1, 0, 0}));
    EXPECT_NEAR(j["terms"][1]["re"].get<double>(), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_EQ(j["terms"][1]["im"].get<double>(), 0.0);
}

TEST(Serialization, round_trip_property) {
    std::mt19937_64 rng(21);
    auto modes = ModeRegistry::numbered("m", 4);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_state(rng, modes, 8);
        auto back = pure_state_from_json(nlohmann::json::parse(to_json(s).dump()));
        ASSERT_EQ(back.modes(), s.modes());
        ASSERT_EQ(back.terms(), s.terms());

        MixedState mix({{0.3, s}, {0.7, make_vacuum(modes)}});
        auto mix_back = mixed_state_from_json(nlohmann::json::parse(to_json(mix).dump()));
        ASSERT_EQ(mix_back.branches().size(), 2u);
        EXPECT_EQ(mix_back.branches()[0].probability, 0.3);
        EXPECT_EQ(mix_back.branches()[0].state.terms(), s.terms());
    }
}
