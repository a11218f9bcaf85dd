// Copyright 2026 The aqec-lab Authors
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

#include "aqec/noise.h"

#include <chrono>
#include <numbers>
#include <set>

#include "gtest/gtest.h"

#include "aqec/rng.h"
#include "oracle.h"

using namespace aqec;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int n, Rng &rng) {
    StateVector v(n);
    for (uint64_t x = 0; x < v.size(); x++) {
        v[x] = rng.complex_normal();
    }
    return v;
}

std::vector<oracle::Complex> amps(const StateVector &v) {
    return {v.amplitudes().begin(), v.amplitudes().end()};
}

BitTable random_table(int width, Rng &rng) {
    BitTable t(width);
    for (uint64_t x = 0; x < t.size(); x++) {
        t.set(x, rng.next() & 1);
    }
    return t;
}

// Random control set of any kind that fits a flip on `target` in n qubits.
ControlSetSpec random_controls(int n, int target, Rng &rng) {
    switch (rng.below(6)) {
        case 0:
            return AllControls{};
        case 1:
            return EmptyControls{};
        case 2:
            return SingletonControl{rng.below(uint64_t{1} << (n - 1))};
        case 3:
            return ExplicitControls{random_table(n - 1, rng)};
        case 4:
            return SeededControls{rng.uniform(), rng.next()};
        default: {
            if (n < 2) {
                return AllControls{};
            }
            int len = 1;
            int block = static_cast<int>(rng.below(n));
            if (block == target) {
                block = (block + 1) % n;
            }
            return BlockPredicate{block, len, random_table(len, rng)};
        }
    }
}

void expect_near(const StateVector &a, const std::vector<oracle::Complex> &b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (uint64_t x = 0; x < a.size(); x++) {
        ASSERT_NEAR(std::abs(a[x] - b[x]), 0.0, tol) << x;
    }
}

BooleanFunctionTable balanced_tribes(int width) {
    return balance(tribes(width)).table;
}

}  // namespace

TEST(noise, bitflip_empty_and_all) {
    Rng rng(1);
    auto phi = random_state(4, rng);
    auto same = apply_bitflip({2, EmptyControls{}}, phi);
    ASSERT_EQ(amps(same), amps(phi));
    auto flipped = apply_bitflip({2, AllControls{}}, phi);
    for (uint64_t x = 0; x < 16; x++) {
        ASSERT_EQ(flipped[x], phi[x ^ 4]);
    }
}

TEST(noise, uniform_state_is_invariant_under_every_bitflip) {
    StateVector u(5);
    for (uint64_t x = 0; x < 32; x++) {
        u[x] = 1.0 / std::sqrt(32.0);
    }
    Rng rng(2);
    for (int trial = 0; trial < 50; trial++) {
        int target = static_cast<int>(rng.below(5));
        ControlledBitFlip e{target, random_controls(5, target, rng)};
        ASSERT_EQ(amps(apply_bitflip(e, u)), amps(u));
    }
}

TEST(noise, application_matches_oracle_matrices) {
    Rng rng(3);
    for (int trial = 0; trial < 300; trial++) {
        int n = 1 + static_cast<int>(rng.below(6));
        auto phi = random_state(n, rng);
        ErrorOperator e;
        switch (trial % 3) {
            case 0: {
                int target = static_cast<int>(rng.below(n));
                e = ControlledBitFlip{target, random_controls(n, target, rng)};
                break;
            }
            case 1: {
                PhaseSetSpec set = AllControls{};
                if (rng.below(2)) {
                    set = ExplicitControls{random_table(n, rng)};
                } else if (rng.below(2)) {
                    set = SeededControls{0.5, rng.next()};
                }
                e = ControlledPhase{set, 2 * kPi * rng.uniform()};
                break;
            }
            default: {
                PhasePartition p{2, {}, {0, kPi / 3, 2.0, 5.5}};
                for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
                    p.assignment.push_back(static_cast<uint32_t>(rng.below(4)));
                }
                e = p;
                break;
            }
        }
        auto op = oracle::operator_matrix(e, n);
        ASSERT_LE(oracle::unitarity_defect(op), 1e-12);
        auto out = aqec::apply(e, phi);
        expect_near(out, oracle::apply_matrix(op, amps(phi)), 1e-12);
        ASSERT_NEAR(out.norm_squared(), phi.norm_squared(), 1e-12 * phi.norm_squared());
    }
}

TEST(noise, bitflip_involution) {
    Rng rng(4);
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + static_cast<int>(rng.below(7));
        int target = static_cast<int>(rng.below(n));
        ControlledBitFlip e{target, random_controls(n, target, rng)};
        auto phi = random_state(n, rng);
        ASSERT_EQ(amps(apply_bitflip(e, apply_bitflip(e, phi))), amps(phi));
    }
}

TEST(noise, phase_examples) {
    Rng rng(5);
    auto phi = random_state(3, rng);
    ASSERT_EQ(amps(apply_phase({AllControls{}, 0.0}, phi)), amps(phi));
    ASSERT_EQ(amps(apply_phase({EmptyControls{}, 1.0}, phi)), amps(phi));

    PhasePartition global{std::nullopt, std::vector<uint32_t>(8, 0), {1.25}};
    auto psi = random_state(3, rng);
    double before = std::abs(inner(phi, psi));
    double after = std::abs(inner(phi, apply_partitioned_phase(global, psi)));
    ASSERT_NEAR(before, after, 1e-12);

    // S = {x : x1 = 1}, phi = (|00> + |10>)/sqrt(2) with x1 in bit 0.
    StateVector v(2);
    v[0] = 1 / std::sqrt(2.0);
    v[1] = 1 / std::sqrt(2.0);
    BitTable s(2);
    s.set(1, true);
    s.set(3, true);
    auto w = apply_phase({ExplicitControls{s}, kPi / 2}, v);
    ASSERT_NEAR(std::abs(oracle::naive_inner(amps(v), amps(w))), std::sqrt(2.0) / 2, 1e-12);
}

TEST(noise, bitflip_form_matches_oracle) {
    Rng rng(6);
    for (int trial = 0; trial < 1000; trial++) {
        int n = 1 + static_cast<int>(rng.below(7));
        int target = static_cast<int>(rng.below(n));
        ControlledBitFlip e{target, random_controls(n, target, rng)};
        auto phi = random_state(n, rng);
        auto psi = random_state(n, rng);
        auto moved = oracle::apply_matrix(oracle::operator_matrix(e, n), amps(phi));
        auto expected = oracle::naive_inner(amps(psi), moved);
        ASSERT_NEAR(std::abs(bitflip_form(phi, psi, e) - expected), 0.0, 1e-10) << trial;
        ASSERT_NEAR(std::abs(inner(psi, phi) - oracle::naive_inner(amps(psi), amps(phi))), 0.0, 1e-10);
    }
}

TEST(noise, bitflip_form_examples) {
    StateVector phi(1, {1, 0});
    ASSERT_NEAR(std::abs(bitflip_form(phi, phi, {0, AllControls{}})), 0.0, 1e-15);

    Rng rng(7);
    auto a = random_state(4, rng);
    auto b = random_state(4, rng);
    ASSERT_EQ(bitflip_form(a, b, {1, EmptyControls{}}), inner(b, a));

    for (int i = 0; i < 4; i++) {
        double drop = 0;
        for (uint64_t x = 0; x < 16; x++) {
            if (!((x >> i) & 1)) {
                drop += std::norm(a[x] - a[x | (uint64_t{1} << i)]);
            }
        }
        Amplitude form = bitflip_form(a, a, {i, AllControls{}});
        ASSERT_NEAR(form.real(), a.norm_squared() - drop, 1e-12);
        ASSERT_NEAR(form.imag(), 0.0, 1e-12);
    }
}

TEST(noise, diagonal_drop_is_real_and_nonpositive) {
    Rng rng(8);
    for (int trial = 0; trial < 500; trial++) {
        int n = 1 + static_cast<int>(rng.below(7));
        int target = static_cast<int>(rng.below(n));
        ControlledBitFlip e{target, random_controls(n, target, rng)};
        auto phi = random_state(n, rng);
        Amplitude diff = bitflip_form(phi, phi, e) - phi.norm_squared();
        ASSERT_LE(std::abs(diff.imag()), 1e-12);
        ASSERT_LE(diff.real(), 1e-12);
        ASSERT_NEAR(bitflip_expectation(phi, e), bitflip_form(phi, phi, e).real(), 1e-12);
    }
}

TEST(noise, cross_form_conjugates_psi_difference) {
    Rng rng(9);
    auto phi = random_state(3, rng);
    auto psi = random_state(3, rng);
    for (uint64_t y = 0; y < 4; y++) {
        ControlledBitFlip e{1, SingletonControl{y}};
        uint64_t q0 = insert_bit(y, 1, false);
        uint64_t q1 = q0 | 2;
        Amplitude expected = inner(psi, phi) - std::conj(psi[q0] - psi[q1]) * (phi[q0] - phi[q1]);
        ASSERT_NEAR(std::abs(bitflip_form(phi, psi, e) - expected), 0.0, 1e-12);
        ASSERT_NEAR(std::abs(bitflip_correction(phi, psi, e) - (inner(psi, phi) - expected)), 0.0, 1e-12);
    }
}

TEST(noise, vector_influence_matches_oracle) {
    Rng rng(10);
    for (int n = 1; n <= 8; n++) {
        auto phi = random_state(n, rng);
        auto slow = oracle::naive_influence(amps(phi), n);
        for (int i = 0; i < n; i++) {
            ASSERT_NEAR(vector_influence(phi, i), slow[i], 1e-12);
        }
    }
    StateVector u(3);
    for (uint64_t x = 0; x < 8; x++) {
        u[x] = Amplitude(0.3, 0.1);
    }
    for (double v : oracle::naive_influence(amps(u), 3)) {
        ASSERT_EQ(v, 0.0);
    }
}

TEST(noise, structured_matches_dense_on_full_flips) {
    auto f = balanced_tribes(4);
    auto p = make_params(16, 2);
    StructuredEvaluator eval(f, p);
    for (uint64_t seed = 0; seed < 100; seed++) {
        auto c = sample_codeword(p, seed);
        auto phi = materialize_codeword(f, c);
        int i = static_cast<int>(seed % 16);
        ControlledBitFlip e{i, AllControls{}};
        Amplitude dense = bitflip_form(phi, phi, e);
        Amplitude fast = eval.bitflip_form(c, e);
        ASSERT_LE(std::abs(fast - dense), 1e-9 * std::max(1.0, std::abs(dense))) << seed;
    }
}

TEST(noise, structured_matches_dense_on_block_predicates) {
    Rng rng(12);
    for (auto [n, pairs] : std::vector<std::pair<int, int>>{{8, 1}, {12, 2}, {12, 3}, {16, 2}}) {
        auto p = make_params(n, pairs);
        auto f = balanced_tribes(p.block_len);
        StructuredEvaluator eval(f, p);
        for (int trial = 0; trial < 40; trial++) {
            auto c = sample_codeword(p, rng.next());
            auto phi = materialize_codeword(f, c);
            int target = static_cast<int>(rng.below(n));
            ControlSetSpec controls = EmptyControls{};
            if (trial % 4 != 0) {
                int block = static_cast<int>(rng.below(2 * pairs));
                if (block == target / p.block_len) {
                    block ^= 1;
                }
                controls = BlockPredicate{block, p.block_len, random_table(p.block_len, rng)};
            }
            ControlledBitFlip e{target, controls};
            Amplitude dense = bitflip_form(phi, phi, e);
            Amplitude fast = eval.bitflip_form(c, e);
            ASSERT_LE(std::abs(fast - dense), 1e-9 * std::max(1.0, std::abs(dense))) << n << " " << trial;
            ASSERT_NEAR(eval.norm_squared(c), phi.norm_squared(), 1e-9);
        }
    }
}

TEST(noise, structured_empty_controls_give_norm) {
    auto p = make_params(16, 2);
    auto f = balanced_tribes(4);
    auto c = sample_codeword(p, 77);
    for (auto &a : c.alpha) {
        a *= 2.5;
    }
    Amplitude form = structured_bitflip_form(f, c, {3, EmptyControls{}});
    ASSERT_NEAR(form.real(), c.norm_squared(), 1e-9);
    ASSERT_NEAR(form.imag(), 0.0, 1e-12);
}

TEST(noise, structured_scales_to_64_qubits) {
    auto p = make_params(64, 2);
    auto f = balanced_tribes(16);
    StructuredEvaluator eval(f, p);
    auto c = sample_codeword(p, 5);
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 64; i++) {
        Amplitude form = eval.bitflip_form(c, {i, AllControls{}});
        ASSERT_TRUE(std::isfinite(form.real()));
        ASSERT_LE(form.real(), 1.0 + 1e-12);
        ASSERT_GE(form.real(), -1.0);
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ASSERT_LT(seconds, 1.0);
}

TEST(noise, structured_rejects_unsupported_shapes) {
    auto p = make_params(8, 2);
    auto f = balanced_tribes(2);
    StructuredEvaluator eval(f, p);
    auto c = sample_codeword(p, 1);
    ASSERT_FALSE(StructuredEvaluator::supports(SeededControls{0.5, 1}));
    ASSERT_TRUE(StructuredEvaluator::supports(AllControls{}));
    ASSERT_THROW(eval.bitflip_form(c, {0, SeededControls{0.5, 1}}), std::invalid_argument);
    ASSERT_THROW(eval.bitflip_form(c, {0, BlockPredicate{0, 2, BitTable(2)}}), std::invalid_argument);
    ASSERT_THROW(eval.bitflip_form(c, {0, BlockPredicate{1, 1, BitTable(1)}}), std::invalid_argument);
    ASSERT_THROW(eval.bitflip_form(sample_codeword(make_params(8, 1), 1), {0, AllControls{}}),
                 std::invalid_argument);
    ASSERT_THROW(StructuredEvaluator(balanced_tribes(3), p), std::invalid_argument);
}

TEST(noise, singleton_enumeration) {
    ASSERT_EQ(enumerate_singletons(2).size(), 4u);
    ASSERT_EQ(enumerate_singletons(4).size(), 32u);
    std::set<std::pair<int, uint64_t>> seen;
    for (const auto &e : enumerate_singletons(4)) {
        seen.insert({e.target, std::get<SingletonControl>(e.controls).point});
    }
    ASSERT_EQ(seen.size(), 32u);
    Rng rng(13);
    auto phi = random_state(4, rng);
    for (const auto &e : enumerate_singletons(4)) {
        ASSERT_EQ(amps(apply_bitflip(e, apply_bitflip(e, phi))), amps(phi));
    }
    ASSERT_THROW(enumerate_singletons(0), std::invalid_argument);
    ASSERT_THROW(enumerate_singletons(40), std::invalid_argument);
}

TEST(noise, compose_phases_examples) {
    auto identity = compose_phases({AllControls{}, kPi / 4}, {AllControls{}, kPi / 4}, 3);
    for (uint64_t x = 0; x < 8; x++) {
        ASSERT_EQ(identity.angles[identity.assignment[x]], 0.0);
    }

    BitTable s(2);
    s.set(2, true);
    auto p = compose_phases({ExplicitControls{s}, kPi / 4}, {EmptyControls{}, 0.0}, 2);
    for (uint64_t x = 0; x < 4; x++) {
        double expected = x == 2 ? 7 * kPi / 4 : 0.0;
        ASSERT_NEAR(p.angles[p.assignment[x]], expected, 1e-15);
    }

    // All nine (theta_X, theta_Y) combinations.
    std::set<long> seen;
    double grid[3] = {0, kPi / 4, kPi / 2};
    for (double tx : grid) {
        for (double ty : grid) {
            auto q = compose_phases({AllControls{}, tx}, {AllControls{}, ty}, 1);
            double a = q.angles[q.assignment[0]];
            seen.insert(std::lround(a / (kPi / 4)));
        }
    }
    ASSERT_EQ(seen, (std::set<long>{0, 1, 2, 6, 7}));
    ASSERT_THROW(compose_phases({ExplicitControls{BitTable(3)}, 0.0}, {AllControls{}, 0.0}, 2),
                 std::invalid_argument);
}

TEST(noise, compose_phases_matches_operator_product) {
    Rng rng(14);
    for (int trial = 0; trial < 30; trial++) {
        ControlledPhase x{ExplicitControls{random_table(3, rng)}, 2 * kPi * rng.uniform()};
        ControlledPhase y{SeededControls{0.5, rng.next()}, 2 * kPi * rng.uniform()};
        auto p = compose_phases(x, y, 3);
        auto ox = oracle::operator_matrix(x, 3);
        auto oy = oracle::operator_matrix(y, 3);
        auto op = oracle::operator_matrix(p, 3);
        for (uint64_t k = 0; k < 8; k++) {
            ASSERT_NEAR(std::abs(std::conj(ox.at(k, k)) * oy.at(k, k) - op.at(k, k)), 0.0, 1e-12);
        }
    }
}

TEST(noise, validation_errors) {
    StateVector phi(3);
    ASSERT_THROW(apply_bitflip({3, AllControls{}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_bitflip({0, SingletonControl{4}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_bitflip({0, ExplicitControls{BitTable(3)}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_bitflip({0, SeededControls{1.5, 0}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_bitflip({0, BlockPredicate{0, 1, BitTable(1)}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_phase({AllControls{}, 7.0}, phi), std::invalid_argument);
    ASSERT_THROW(apply_phase({AllControls{}, -0.1}, phi), std::invalid_argument);
    ASSERT_THROW(apply_partitioned_phase({1, std::vector<uint32_t>(4, 0), {0.0}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_partitioned_phase({1, std::vector<uint32_t>(8, 1), {0.0}}, phi), std::invalid_argument);
    ASSERT_THROW(apply_partitioned_phase({1, std::vector<uint32_t>(8, 0), {1.0, 0.5}}, phi),
                 std::invalid_argument);
    ASSERT_THROW(bitflip_form(phi, StateVector(2), {0, AllControls{}}), std::invalid_argument);
}

TEST(noise, angles) {
    ASSERT_EQ(wrap_angle(0.0), 0.0);
    ASSERT_NEAR(wrap_angle(-kPi / 4), 7 * kPi / 4, 1e-15);
    ASSERT_NEAR(wrap_angle(5 * kPi), kPi, 1e-12);
    ASSERT_LT(wrap_angle(2 * kPi), 2 * kPi);
    ASSERT_NEAR(circular_distance(0.1, 2 * kPi - 0.1), 0.2, 1e-12);
    ASSERT_NEAR(circular_distance(0, kPi), kPi, 1e-12);
}

TEST(noise, seeded_membership_is_deterministic) {
    int hits = 0;
    for (uint64_t y = 0; y < 10000; y++) {
        ASSERT_EQ(seeded_member(3, 0.3, y), seeded_member(3, 0.3, y));
        hits += seeded_member(3, 0.3, y);
        ASSERT_FALSE(seeded_member(3, 0.0, y));
        ASSERT_TRUE(seeded_member(3, 1.0, y));
    }
    ASSERT_NEAR(hits / 10000.0, 0.3, 0.03);
}
