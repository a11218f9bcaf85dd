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

#include "aqec/verify.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "aqec/parallel.h"
#include "aqec/rng.h"

namespace aqec {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_block_function(const BooleanFunctionTable &f, const CodeParams &p, bool need_balanced, const char *who) {
    if (f.width() != p.block_len) {
        throw std::invalid_argument(std::string(who) + ": function width does not match the block length");
    }
    if (need_balanced && !f.is_balanced()) {
        throw std::invalid_argument(std::string(who) +
                                    ": building block is not balanced, so {f_z} is not orthogonal");
    }
}

ControlledBitFlip random_seeded_flip(Rng &rng, int n) {
    int target = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    double density = rng.uniform();
    return {target, SeededControls{density, rng.next()}};
}

ControlledBitFlip random_block_flip(Rng &rng, const CodeParams &p) {
    int target = static_cast<int>(rng.below(static_cast<uint64_t>(p.n)));
    int target_block = target / p.block_len;
    int block = static_cast<int>(rng.below(static_cast<uint64_t>(2 * p.pairs - 1)));
    if (block >= target_block) {
        block++;
    }
    BlockPredicate pred{block, p.block_len, BitTable(p.block_len)};
    uint64_t shape = rng.below(3);
    uint64_t mask = pred.subset.word_mask();
    for (auto &w : pred.subset.words()) {
        uint64_t a = rng.next();
        uint64_t b = rng.next();
        w = (shape == 0 ? (a & b) : shape == 1 ? a : (a | b)) & mask;
    }
    return {target, std::move(pred)};
}

double immunity_epsilon(double form, double norm) {
    return 1 - std::abs(form) / norm;
}

struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    ReportWitness witness;
    uint64_t evaluations = 0;
};

// Folds per-item worst cases in index order so the winner is independent
// of scheduling.
Worst fold(std::vector<Worst> &items) {
    Worst total;
    for (auto &w : items) {
        total.evaluations += w.evaluations;
        if (w.value > total.value) {
            total.value = w.value;
            total.witness = std::move(w.witness);
        }
    }
    return total;
}

double separation_value(const StateVector &phi, const StateVector &psi, const ErrorOperator &x,
                        const ErrorOperator &y) {
    return std::abs(inner(apply(x, phi), apply(y, psi)));
}

const ControlledPhase kIdentityPhase{EmptyControls{}, 0.0};

}  // namespace

void validate(const VerificationConfig &cfg) {
    if (cfg.codeword_samples < 1 || cfg.error_draws < 0) {
        throw std::invalid_argument("sample counts must be >= 1 (codewords) and >= 0 (error draws)");
    }
    if (!(cfg.tol > 0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    if (cfg.dense_cap < 1 || cfg.dense_cap > 30) {
        throw std::invalid_argument("dense cap must be in [1, 30]");
    }
}

std::vector<CodewordCoeffs> codeword_suite(const CodeParams &p, const VerificationConfig &cfg) {
    std::vector<CodewordCoeffs> suite;
    uint64_t corners = std::min<uint64_t>(p.dimension(), 64);
    for (uint64_t z = 0; z < corners; z++) {
        suite.push_back(basis_codeword(p, z));
    }
    suite.push_back(uniform_codeword(p));
    suite.push_back(sign_codeword(p, derive_seed(cfg.seed, "signs")));
    for (int k = 0; k < cfg.codeword_samples; k++) {
        suite.push_back(sample_codeword(p, derive_seed(cfg.seed, "codeword", static_cast<uint64_t>(k))));
    }
    for (const auto &c : cfg.extra_codewords) {
        if (c.params != p || c.alpha.size() != p.dimension()) {
            throw std::invalid_argument("supplied codeword does not match the code parameters");
        }
        suite.push_back(c);
    }
    return suite;
}

VerificationReport check_immunity(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg) {
    validate(cfg);
    require_block_function(f, p, true, "check_immunity");
    auto start = Clock::now();
    bool structured = cfg.structured || p.n > cfg.dense_cap;
    double s = influence_profile(f).max_influence;
    std::vector<CodewordCoeffs> suite = codeword_suite(p, cfg);
    StructuredEvaluator evaluator(f, p);
    for (const auto &e : cfg.extra_errors) {
        validate(e, p.n);
        if (structured && !StructuredEvaluator::supports(e.controls)) {
            throw std::invalid_argument("supplied error needs dense evaluation; its controls are not block-shaped");
        }
    }

    std::vector<Worst> per(suite.size());
    parallel_for(suite.size(), [&](size_t c) {
        Worst &w = per[c];
        const CodewordCoeffs &coeffs = suite[c];
        Rng rng(derive_seed(cfg.seed, "controls", c));
        auto consider = [&](ControlledBitFlip e, double eps) {
            w.evaluations++;
            if (eps > w.value) {
                w.value = eps;
                w.witness = ImmunityWitness{coeffs, std::move(e), structured};
            }
        };

        if (structured) {
            double norm = evaluator.norm_squared(coeffs);
            for (int i = 0; i < p.n; i++) {
                ControlledBitFlip e{i, AllControls{}};
                consider(e, immunity_epsilon(evaluator.bitflip_form(coeffs, e).real(), norm));
            }
            for (int d = 0; d < cfg.error_draws; d++) {
                ControlledBitFlip e = random_block_flip(rng, p);
                double form = evaluator.bitflip_form(coeffs, e).real();
                consider(std::move(e), immunity_epsilon(form, norm));
            }
            for (const auto &e : cfg.extra_errors) {
                consider(e, immunity_epsilon(evaluator.bitflip_form(coeffs, e).real(), norm));
            }
            return;
        }

        StateVector phi = materialize_codeword(f, coeffs, cfg.dense_cap);
        double norm = phi.norm_squared();
        for (int i = 0; i < p.n; i++) {
            ControlledBitFlip e{i, AllControls{}};
            consider(e, immunity_epsilon(bitflip_expectation(phi, e), norm));
        }
        for (int d = 0; d < cfg.error_draws; d++) {
            ControlledBitFlip e = random_seeded_flip(rng, p.n);
            double form = bitflip_expectation(phi, e);
            consider(std::move(e), immunity_epsilon(form, norm));
        }
        for (const auto &e : cfg.extra_errors) {
            consider(e, immunity_epsilon(bitflip_expectation(phi, e), norm));
        }
        if (p.n <= 5) {
            uint64_t subsets = uint64_t{1} << (uint64_t{1} << (p.n - 1));
            for (int i = 0; i < p.n; i++) {
                for (uint64_t mask = 0; mask < subsets; mask++) {
                    ExplicitControls set{BitTable(p.n - 1)};
                    set.members.words()[0] = mask;
                    ControlledBitFlip e{i, std::move(set)};
                    double form = bitflip_expectation(phi, e);
                    consider(std::move(e), immunity_epsilon(form, norm));
                }
            }
        }
    });

    Worst worst = fold(per);
    VerificationReport r;
    r.kind = "immunity";
    r.n = p.n;
    r.pairs = p.pairs;
    r.s = s;
    r.measured = worst.value;
    r.bound = 2 * s;
    r.pass = worst.value <= 2 * s + cfg.tol && (!cfg.epsilon_claim || worst.value <= *cfg.epsilon_claim + cfg.tol);
    r.witness = std::move(worst.witness);
    r.seed = cfg.seed;
    r.evaluations = worst.evaluations;
    r.extras.emplace_back("codewords", static_cast<double>(suite.size()));
    r.extras.emplace_back("structured", structured ? 1.0 : 0.0);
    r.runtime_ms = elapsed_ms(start);
    return r;
}

VerificationReport check_separation(const std::vector<StatePair> &pairs, ErrorFamily family,
                                    const VerificationConfig &cfg) {
    validate(cfg);
    if (pairs.empty()) {
        throw std::invalid_argument("check_separation: no codeword pairs given");
    }
    for (const auto &[phi, psi] : pairs) {
        require_orthonormal(phi, psi, cfg.tol, "check_separation");
    }
    for (const auto &e : cfg.extra_separation_errors) {
        std::visit([&](const auto &op) { validate(op, pairs.front().first.num_qubits()); }, e);
    }
    auto start = Clock::now();
    const std::array<double, 3> thetas = {0, std::numbers::pi / 4, std::numbers::pi / 2};

    std::vector<Worst> per(pairs.size());
    std::vector<double> full_attack(pairs.size(), 0), realizable_attack(pairs.size(), 0);
    parallel_for(pairs.size(), [&](size_t k) {
        const StateVector &phi = pairs[k].first;
        const StateVector &psi = pairs[k].second;
        int n = phi.num_qubits();
        Worst &w = per[k];
        Rng rng(derive_seed(cfg.seed, "separation", k));
        auto consider = [&](const StateVector &a, const StateVector &b, ErrorOperator x, ErrorOperator y) {
            double v = separation_value(a, b, x, y);
            w.evaluations++;
            if (v > w.value) {
                w.value = v;
                w.witness = SeparationWitness{a, b, std::move(x), std::move(y)};
            }
            return v;
        };

        for (const auto &e : cfg.extra_separation_errors) {
            consider(phi, psi, e, e);
        }
        if (family == ErrorFamily::bitflip) {
            for (int i = 0; i < n; i++) {
                ControlledBitFlip e{i, AllControls{}};
                consider(phi, psi, e, e);
            }
            for (int d = 0; d < cfg.codeword_samples; d++) {
                ControlledBitFlip x = random_seeded_flip(rng, n);
                ControlledBitFlip y = random_seeded_flip(rng, n);
                consider(phi, psi, std::move(x), std::move(y));
            }
            return;
        }

        for (int d = 0; d < cfg.codeword_samples; d++) {
            ControlledPhase x{SeededControls{rng.uniform(), rng.next()}, thetas[rng.below(3)]};
            ControlledPhase y{SeededControls{rng.uniform(), rng.next()}, thetas[rng.below(3)]};
            consider(phi, psi, std::move(x), std::move(y));
        }
        BoostedPair boosted = boost_overlap(phi, psi, cfg.tol);
        PhaseAttack attack = build_phase_partition(boosted.phi, boosted.psi, cfg.attack_level, cfg.attack_grid,
                                                   cfg.dense_cap);
        full_attack[k] = consider(boosted.phi, boosted.psi, kIdentityPhase, std::move(attack.partition));
        if (cfg.attack_level == 2) {
            PhaseAttack rotated = build_rotated_partition(boosted.phi, boosted.psi, 2, 64, cfg.dense_cap);
            if (auto xy = realize_as_xy(rotated.partition)) {
                realizable_attack[k] = consider(boosted.phi, boosted.psi, std::move(xy->x), std::move(xy->y));
            }
        }
    });

    double min_pair = std::numeric_limits<double>::infinity();
    for (const auto &w : per) {
        min_pair = std::min(min_pair, w.value);
    }
    Worst worst = fold(per);
    VerificationReport r;
    r.kind = family == ErrorFamily::bitflip ? "separation-bitflip" : "separation-phaseflip";
    r.n = pairs.front().first.num_qubits();
    r.measured = worst.value;
    r.bound = cfg.alpha_claim;
    r.pass = !cfg.alpha_claim || worst.value <= *cfg.alpha_claim + cfg.tol;
    r.witness = std::move(worst.witness);
    r.seed = cfg.seed;
    r.evaluations = worst.evaluations;
    r.extras.emplace_back("pairs", static_cast<double>(pairs.size()));
    r.extras.emplace_back("min_pair_alpha", min_pair);
    if (family == ErrorFamily::phaseflip) {
        r.extras.emplace_back("min_attack_value", *std::min_element(full_attack.begin(), full_attack.end()));
        if (cfg.attack_level == 2) {
            r.extras.emplace_back("min_realizable_attack_value",
                                  *std::min_element(realizable_attack.begin(), realizable_attack.end()));
        }
    }
    r.runtime_ms = elapsed_ms(start);
    return r;
}

double check_exactness(const StateVector &phi, const StateVector &psi, const ErrorOperator &e, double tol) {
    require_orthonormal(phi, psi, tol, "check_exactness");
    StateVector e_phi = apply(e, phi);
    StateVector e_psi = apply(e, psi);
    return exactness_residual(inner(phi, e_phi), inner(psi, e_psi), inner(psi, e_phi));
}

BoundCheck check_sensitivity_bound(const StateVector &phi, const ControlledBitFlip &e, double tol, int dense_cap) {
    int n = phi.num_qubits();
    check_dense_cap(n, dense_cap);
    validate(e, n);
    BoundCheck out;
    out.lhs = std::abs(bitflip_form(phi, phi, e) - phi.norm_squared());
    out.rhs = std::ldexp(vector_influence(phi, e.target), n - 1);
    out.pass = out.lhs <= out.rhs + tol;
    return out;
}

VerificationReport check_lemma_w(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg) {
    validate(cfg);
    require_block_function(f, p, true, "check_lemma_w");
    check_dense_cap(p.n, cfg.dense_cap);
    auto start = Clock::now();
    double s = influence_profile(f).max_influence;
    std::vector<CodewordCoeffs> suite = codeword_suite(p, cfg);

    std::vector<Worst> per(suite.size());
    parallel_for(suite.size(), [&](size_t c) {
        StateVector phi = materialize_codeword(f, suite[c], cfg.dense_cap);
        double norm = phi.norm_squared();
        Worst &w = per[c];
        for (int i = 0; i < p.n; i++) {
            double v = std::ldexp(vector_influence(phi, i), p.n - 1) / norm;
            w.evaluations++;
            if (v > w.value) {
                w.value = v;
                w.witness = InfluenceWitness{suite[c], i};
            }
        }
    });

    Worst worst = fold(per);
    VerificationReport r;
    r.kind = "lemma-w";
    r.n = p.n;
    r.pairs = p.pairs;
    r.s = s;
    r.measured = worst.value;
    r.bound = 2 * s;
    r.pass = worst.value <= 2 * s + cfg.tol;
    r.witness = std::move(worst.witness);
    r.seed = cfg.seed;
    r.evaluations = worst.evaluations;
    r.runtime_ms = elapsed_ms(start);
    return r;
}

VerificationReport check_gram(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg) {
    validate(cfg);
    require_block_function(f, p, false, "check_gram");
    auto start = Clock::now();
    bool dense = p.n <= cfg.dense_cap;
    ComplexMatrix g = dense ? gram(f, p, cfg.dense_cap) : gram_structured(f, p);
    double diagonal = std::ldexp(1.0, p.basis_norm_exponent());

    GramWitness witness;
    double worst = -1;
    for (uint64_t row = 0; row < g.dim; row++) {
        for (uint64_t col = 0; col < g.dim; col++) {
            double dev = std::abs(g(row, col) - (row == col ? diagonal : 0.0));
            if (dev > worst) {
                worst = dev;
                witness = {row, col, g(row, col)};
            }
        }
    }

    VerificationReport r;
    r.kind = "gram";
    r.n = p.n;
    r.pairs = p.pairs;
    r.s = influence_profile(f).max_influence;
    r.measured = worst;
    r.bound = cfg.tol;
    r.pass = worst <= cfg.tol;
    r.witness = witness;
    r.seed = cfg.seed;
    r.evaluations = g.dim * g.dim;
    r.extras.emplace_back("diagonal_expected", diagonal);
    r.extras.emplace_back("dense", dense ? 1.0 : 0.0);
    r.extras.emplace_back("balanced", f.is_balanced() ? 1.0 : 0.0);
    r.runtime_ms = elapsed_ms(start);
    return r;
}

double reevaluate_witness(const VerificationReport &report, const BooleanFunctionTable *f, int dense_cap) {
    auto need_f = [&]() -> const BooleanFunctionTable & {
        if (f == nullptr) {
            throw std::invalid_argument("reevaluate_witness: this witness needs the building block");
        }
        return *f;
    };
    return std::visit(
        overloaded{
            [](const std::monostate &) -> double {
                throw std::invalid_argument("reevaluate_witness: report carries no witness");
            },
            [&](const ImmunityWitness &w) {
                const BooleanFunctionTable &fn = need_f();
                if (w.structured) {
                    StructuredEvaluator ev(fn, w.codeword.params);
                    return immunity_epsilon(ev.bitflip_form(w.codeword, w.error).real(), ev.norm_squared(w.codeword));
                }
                StateVector phi = materialize_codeword(fn, w.codeword, dense_cap);
                return immunity_epsilon(bitflip_expectation(phi, w.error), phi.norm_squared());
            },
            [&](const SeparationWitness &w) { return separation_value(w.phi, w.psi, w.x, w.y); },
            [&](const InfluenceWitness &w) {
                StateVector phi = materialize_codeword(need_f(), w.codeword, dense_cap);
                int n = phi.num_qubits();
                return std::ldexp(vector_influence(phi, w.qubit), n - 1) / phi.norm_squared();
            },
            [&](const GramWitness &w) {
                const BooleanFunctionTable &fn = need_f();
                if (!report.pairs) {
                    throw std::invalid_argument("reevaluate_witness: gram report lacks B");
                }
                CodeParams p = make_params(report.n, *report.pairs);
                Amplitude entry = p.n <= dense_cap
                                      ? inner(materialize_basis(fn, p, w.row, dense_cap),
                                              materialize_basis(fn, p, w.col, dense_cap))
                                      : gram_structured(fn, p)(w.row, w.col);
                double diagonal = std::ldexp(1.0, p.basis_norm_exponent());
                return std::abs(entry - (w.row == w.col ? diagonal : 0.0));
            },
        },
        report.witness);
}

}  // namespace aqec
