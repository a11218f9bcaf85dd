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

#include "aqec/codespace.h"

#include "gtest/gtest.h"

#include "aqec/rng.h"
#include "oracle.h"

using namespace aqec;

namespace {

BooleanFunctionTable balanced_tribes(int width) {
    return balance(tribes(width)).table;
}

std::vector<oracle::Complex> amps(const StateVector &v) {
    return {v.amplitudes().begin(), v.amplitudes().end()};
}

// f_z(x) evaluated from explicit digit slices.
double naive_fz(const BooleanFunctionTable &f, int pairs, int len, uint64_t z, uint64_t x) {
    auto digits = oracle::to_digits(x, 2 * pairs * len);
    double v = 1;
    for (int k = 0; k < pairs; k++) {
        int side = static_cast<int>((z >> k) & 1);
        std::vector<int> block(digits.begin() + (2 * k + side) * len, digits.begin() + (2 * k + side + 1) * len);
        v *= f.value(oracle::from_digits(block));
    }
    return v;
}

}  // namespace

TEST(codespace, make_params) {
    auto p = make_params(16, 2);
    ASSERT_EQ(p.block_len, 4);
    ASSERT_EQ(p.dimension(), 4u);
    ASSERT_EQ(make_params(20, 2).block_len, 5);
    ASSERT_THROW(make_params(16, 3), std::invalid_argument);
    ASSERT_THROW(make_params(1, 1), std::invalid_argument);
    ASSERT_THROW(make_params(8, 0), std::invalid_argument);
}

TEST(codespace, block_project_examples) {
    auto p = make_params(4, 1);
    auto x = BitString::parse("1001");
    ASSERT_EQ(block_project(p, x, 0, 0).str(), "10");
    ASSERT_EQ(block_project(p, x, 0, 1).str(), "01");

    auto q = make_params(8, 2);
    auto y = BitString::parse("11110000");
    ASSERT_EQ(block_project(q, y, 1, 0).str(), "00");
    ASSERT_EQ(block_project(q, y, 0, 1).str(), "11");

    ASSERT_THROW(block_project(q, y, 2, 0), std::out_of_range);
    ASSERT_THROW(block_project(q, BitString::parse("1111"), 0, 0), std::invalid_argument);
}

TEST(codespace, blocks_concatenate_back_to_x) {
    auto p = make_params(12, 2);
    Rng rng(5);
    for (int trial = 0; trial < 100; trial++) {
        BitString x(rng.below(uint64_t{1} << 12), 12);
        std::string joined;
        for (int pair = 0; pair < 2; pair++) {
            for (int side = 0; side < 2; side++) {
                joined += block_project(p, x, pair, side).str();
            }
        }
        ASSERT_EQ(joined, x.str());
    }
}

TEST(codespace, eval_fz_examples) {
    auto dictator = BooleanFunctionTable::from_predicate(1, [](uint64_t x) { return x == 1; });
    auto p1 = make_params(2, 1);
    // B = 1: f_0 reads x_{1,0} = x1, f_1 reads x_{1,1} = x2.
    ASSERT_EQ(eval_fz(dictator, p1, BitString(0, 1), BitString::parse("10")), Amplitude(0.5));
    ASSERT_EQ(eval_fz(dictator, p1, BitString(1, 1), BitString::parse("10")), Amplitude(-0.5));

    auto p2 = make_params(4, 2);
    ASSERT_EQ(eval_fz(dictator, p2, BitString(0, 2), BitString::parse("0000")), Amplitude(0.25));
    ASSERT_THROW(eval_fz(dictator, p2, BitString(0, 1), BitString::parse("0000")), std::invalid_argument);
}

TEST(codespace, eval_fz_magnitude_and_oracle) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    for (uint64_t z = 0; z < 4; z++) {
        for (uint64_t x = 0; x < (1u << 12); x += 7) {
            double v = fz_value(f, p, z, x);
            ASSERT_EQ(std::abs(v), 0.25);
            ASSERT_EQ(v, naive_fz(f, 2, 3, z, x));
        }
    }
}

TEST(codespace, eval_fz_ignores_unselected_blocks) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    Rng rng(11);
    for (int trial = 0; trial < 200; trial++) {
        uint64_t z = rng.below(4);
        uint64_t x = rng.below(1 << 12);
        uint64_t unselected = 0;
        for (int k = 0; k < 2; k++) {
            int side = 1 - static_cast<int>((z >> k) & 1);
            unselected |= uint64_t{7} << ((2 * k + side) * 3);
        }
        uint64_t x2 = x ^ (rng.next() & unselected);
        ASSERT_EQ(fz_value(f, p, z, x), fz_value(f, p, z, x2));
    }
}

TEST(codespace, materialize_basis_small_example) {
    auto dictator = BooleanFunctionTable::from_predicate(1, [](uint64_t x) { return x == 1; });
    auto p = make_params(2, 1);
    auto v = materialize_basis(dictator, p, 0);
    std::vector<Amplitude> expected{-0.5, 0.5, -0.5, 0.5};
    ASSERT_EQ(amps(v), expected);
    auto w = materialize_basis(dictator, p, 1);
    std::vector<Amplitude> expected1{-0.5, -0.5, 0.5, 0.5};
    ASSERT_EQ(amps(w), expected1);
}

TEST(codespace, materialize_basis_norm_and_orthogonality) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    std::vector<StateVector> basis;
    for (uint64_t z = 0; z < 4; z++) {
        basis.push_back(materialize_basis(f, p, z));
        ASSERT_NEAR(basis.back().norm_squared(), 256.0, 1e-9);
    }
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            if (a != b) {
                ASSERT_NEAR(std::abs(oracle::naive_inner(amps(basis[a]), amps(basis[b]))), 0.0, 1e-9);
            }
        }
    }
}

TEST(codespace, dense_cap_enforced) {
    auto f = balanced_tribes(4);
    auto p = make_params(16, 2);
    ASSERT_THROW(materialize_basis(f, p, 0, 12), std::invalid_argument);
    ASSERT_THROW(materialize_codeword(f, uniform_codeword(p), 12), std::invalid_argument);
    ASSERT_THROW(gram(f, p, 12), std::invalid_argument);
    ASSERT_THROW(materialize_basis(f, p, 4), std::out_of_range);
    ASSERT_THROW(materialize_basis(balanced_tribes(3), p, 0), std::invalid_argument);
}

TEST(codespace, sample_codeword_is_deterministic_and_unit) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    for (uint64_t seed = 0; seed < 10; seed++) {
        auto a = sample_codeword(p, seed);
        auto b = sample_codeword(p, seed);
        ASSERT_EQ(a.alpha, b.alpha);
        ASSERT_NEAR(a.norm_squared(), 1.0, 1e-12);
        ASSERT_NEAR(materialize_codeword(f, a).norm_squared(), 1.0, 1e-9);
    }
    ASSERT_NE(sample_codeword(p, 1).alpha, sample_codeword(p, 2).alpha);
}

TEST(codespace, basis_codeword_matches_materialize_basis) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    for (uint64_t z = 0; z < 4; z++) {
        auto c = materialize_codeword(f, basis_codeword(p, z));
        auto b = materialize_basis(f, p, z);
        b *= 1.0 / 16.0;
        for (uint64_t x = 0; x < c.size(); x++) {
            ASSERT_NEAR(std::abs(c[x] - b[x]), 0.0, 1e-12);
        }
    }
}

TEST(codespace, materialize_is_linear) {
    auto f = balanced_tribes(2);
    auto p = make_params(8, 2);
    auto c1 = sample_codeword(p, 1);
    auto c2 = sample_codeword(p, 2);
    Amplitude a(0.3, -1.2);
    Amplitude b(-0.7, 0.4);
    CodewordCoeffs mix{p, {}};
    for (size_t z = 0; z < 4; z++) {
        mix.alpha.push_back(a * c1.alpha[z] + b * c2.alpha[z]);
    }
    auto lhs = materialize_codeword(f, mix);
    auto rhs = a * materialize_codeword(f, c1) + b * materialize_codeword(f, c2);
    for (uint64_t x = 0; x < lhs.size(); x++) {
        ASSERT_NEAR(std::abs(lhs[x] - rhs[x]), 0.0, 1e-12);
    }
}

TEST(codespace, norm_formula_and_pointwise_agreement) {
    auto f = balanced_tribes(3);
    auto p = make_params(12, 2);
    Rng rng(99);
    for (int trial = 0; trial < 10; trial++) {
        CodewordCoeffs c{p, {}};
        for (int z = 0; z < 4; z++) {
            c.alpha.push_back(3.0 * rng.complex_normal());
        }
        auto v = materialize_codeword(f, c);
        double expected = 0;
        for (auto a : c.alpha) {
            expected += std::norm(a) * 256.0;
        }
        ASSERT_NEAR(v.norm_squared() / expected, 1.0, 1e-9);
        ASSERT_NEAR(c.norm_squared() / expected, 1.0, 1e-12);
        for (uint64_t x = 0; x < v.size(); x += 13) {
            Amplitude naive = 0;
            for (uint64_t z = 0; z < 4; z++) {
                naive += c.alpha[z] * naive_fz(f, 2, 3, z, x);
            }
            ASSERT_NEAR(std::abs(v[x] - naive), 0.0, 1e-12);
            ASSERT_NEAR(std::abs(eval_codeword(f, c, x) - naive), 0.0, 1e-12);
        }
    }
}

TEST(codespace, normalize_rejects_null) {
    auto p = make_params(4, 1);
    CodewordCoeffs c{p, {0.0, 0.0}};
    ASSERT_THROW(normalize(c), std::invalid_argument);
}

TEST(codespace, gram_examples) {
    auto f = balanced_tribes(2);
    auto p = make_params(8, 2);
    auto g = gram(f, p);
    auto s = gram_structured(f, p);
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            double expected = a == b ? 16.0 : 0.0;
            ASSERT_NEAR(std::abs(g(a, b) - expected), 0.0, 1e-9);
            ASSERT_NEAR(std::abs(s(a, b) - expected), 0.0, 1e-9);
        }
    }

    auto q = make_params(10, 1);
    auto g1 = gram(balanced_tribes(5), q);
    ASSERT_EQ(g1.dim, 2u);
    ASSERT_NEAR(g1(0, 0).real(), 256.0, 1e-9);
    ASSERT_NEAR(std::abs(g1(0, 1)), 0.0, 1e-9);
}

TEST(codespace, gram_detects_unbalanced_function) {
    auto f = BooleanFunctionTable::from_predicate(3, [](uint64_t x) { return x < 3; });
    auto p = make_params(12, 2);
    auto g = gram(f, p);
    auto s = gram_structured(f, p);
    double worst = 0;
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            if (a != b) {
                worst = std::max(worst, std::abs(g(a, b)));
            }
            ASSERT_NEAR(std::abs(g(a, b) - s(a, b)), 0.0, 1e-9);
        }
    }
    ASSERT_GT(worst, 1.0);
}

TEST(codespace, gram_structured_beyond_dense_cap) {
    auto f = balanced_tribes(16);
    auto p = make_params(64, 2);
    auto s = gram_structured(f, p);
    double diag = std::ldexp(1.0, 60);
    for (size_t a = 0; a < 4; a++) {
        ASSERT_NEAR(s(a, a).real() / diag, 1.0, 1e-12);
        for (size_t b = 0; b < 4; b++) {
            if (a != b) {
                ASSERT_EQ(std::abs(s(a, b)), 0.0);
            }
        }
    }
}

TEST(codespace, inner_conjugates_left) {
    StateVector a(1, {Amplitude(0, 1), 0});
    StateVector b(1, {1, 0});
    ASSERT_EQ(inner(a, b), Amplitude(0, -1));
    ASSERT_EQ(inner(b, a), Amplitude(0, 1));
    ASSERT_THROW(inner(a, StateVector(2)), std::invalid_argument);
    ASSERT_TRUE(is_orthonormal(StateVector::basis_state(2, 0), StateVector::basis_state(2, 3), 1e-12));
    ASSERT_FALSE(is_orthonormal(a, a, 1e-12));
    ASSERT_THROW(require_orthonormal(a, a, 1e-9, "test"), std::invalid_argument);
}

TEST(codespace, state_vector_errors) {
    ASSERT_THROW(StateVector(0), std::invalid_argument);
    ASSERT_THROW(StateVector(31), std::invalid_argument);
    ASSERT_THROW(StateVector(2, std::vector<Amplitude>(3)), std::invalid_argument);
}

TEST(codespace, orthonormal_codeword_pair) {
    for (auto [n, pairs] : {std::pair{8, 1}, std::pair{8, 2}, std::pair{12, 2}, std::pair{12, 3}}) {
        auto p = make_params(n, pairs);
        auto f = balanced_tribes(p.block_len);
        for (uint64_t seed = 0; seed < 10; seed++) {
            auto [a, b] = orthonormal_codeword_pair(p, seed);
            ASSERT_NEAR(a.norm_squared(), 1.0, 1e-12);
            ASSERT_NEAR(b.norm_squared(), 1.0, 1e-12);
            ASSERT_TRUE(is_orthonormal(materialize_codeword(f, a), materialize_codeword(f, b), 1e-9));
            ASSERT_EQ(orthonormal_codeword_pair(p, seed).second.alpha, b.alpha);
        }
    }
}

TEST(codespace, random_orthonormal_pair) {
    for (int n = 1; n <= 8; n++) {
        for (uint64_t seed = 0; seed < 10; seed++) {
            auto [a, b] = random_orthonormal_pair(n, seed);
            ASSERT_EQ(a.num_qubits(), n);
            ASSERT_TRUE(is_orthonormal(a, b, 1e-12));
        }
    }
    auto [a1, b1] = random_orthonormal_pair(6, 3);
    auto [a2, b2] = random_orthonormal_pair(6, 3);
    ASSERT_EQ(a1.amplitudes()[5], a2.amplitudes()[5]);
    ASSERT_EQ(b1.amplitudes()[7], b2.amplitudes()[7]);
}
