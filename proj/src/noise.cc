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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aqec/parallel.h"
#include "aqec/rng.h"

namespace aqec {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool block_member(const BlockPredicate &b, uint64_t x) {
    return b.subset.get((x >> (b.block * b.block_len)) & low_mask(b.block_len));
}

// Calls body(member) where member(y, x0) says whether x-hat = y is in the
// control set; x0 is the input with x-hat = y and target bit 0.
template <typename Body>
decltype(auto) with_membership(const ControlledBitFlip &e, Body &&body) {
    return std::visit(
        overloaded{
            [&](const AllControls &) { return body([](uint64_t, uint64_t) { return true; }); },
            [&](const EmptyControls &) { return body([](uint64_t, uint64_t) { return false; }); },
            [&](const SingletonControl &s) { return body([p = s.point](uint64_t y, uint64_t) { return y == p; }); },
            [&](const ExplicitControls &c) { return body([&](uint64_t y, uint64_t) { return c.members.get(y); }); },
            [&](const SeededControls &c) {
                return body([&](uint64_t y, uint64_t) { return seeded_member(c.seed, c.density, y); });
            },
            [&](const BlockPredicate &b) { return body([&](uint64_t, uint64_t x0) { return block_member(b, x0); }); },
        },
        e.controls);
}

void require_same(const StateVector &a, const StateVector &b, const char *context) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(std::string(context) + ": dimension mismatch");
    }
}

// Sum over y in S of term(x0, x1) with x0 = (y,0), x1 = (y,1).
template <typename T, typename Term>
T sum_over_controls(const ControlledBitFlip &e, int n, Term &&term) {
    validate(e, n);
    int t = e.target;
    if (std::holds_alternative<EmptyControls>(e.controls)) {
        return T{};
    }
    if (const auto *s = std::get_if<SingletonControl>(&e.controls)) {
        uint64_t x0 = insert_bit(s->point, t, false);
        return term(x0, x0 | (uint64_t{1} << t));
    }
    uint64_t half = uint64_t{1} << (n - 1);
    uint64_t flip = uint64_t{1} << t;
    return with_membership(e, [&](auto member) {
        return tree_sum<T>(half, [&](uint64_t y) {
            uint64_t x0 = insert_bit(y, t, false);
            return member(y, x0) ? term(x0, x0 | flip) : T{};
        });
    });
}

}  // namespace

bool seeded_member(uint64_t seed, double density, uint64_t point) {
    if (density >= 1) {
        return true;
    }
    uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(point + 0xA0761D6478BD642FULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < density;
}

bool ControlledBitFlip::fires(uint64_t x) const {
    uint64_t y = remove_bit(x, target);
    uint64_t x0 = x & ~(uint64_t{1} << target);
    return with_membership(*this, [&](auto member) { return member(y, x0); });
}

bool ControlledPhase::contains(uint64_t x) const {
    return std::visit(overloaded{
                          [](const AllControls &) { return true; },
                          [](const EmptyControls &) { return false; },
                          [&](const ExplicitControls &c) { return c.members.get(x); },
                          [&](const SeededControls &c) { return seeded_member(c.seed, c.density, x); },
                      },
                      set);
}

int PhasePartition::num_qubits() const {
    uint64_t size = assignment.size();
    if (size < 2 || !std::has_single_bit(size)) {
        throw std::invalid_argument("phase partition assignment must have length 2^n");
    }
    return std::countr_zero(size);
}

void validate(const ControlledBitFlip &e, int n) {
    if (n < 1 || n > kMaxVariables) {
        throw std::invalid_argument("qubit count out of range");
    }
    if (e.target < 0 || e.target >= n) {
        throw std::invalid_argument("bit-flip target " + std::to_string(e.target) + " out of range for n = " +
                                    std::to_string(n));
    }
    std::visit(overloaded{
                   [](const AllControls &) {},
                   [](const EmptyControls &) {},
                   [&](const SingletonControl &s) {
                       if (s.point > low_mask(n - 1)) {
                           throw std::invalid_argument("singleton control point out of range");
                       }
                   },
                   [&](const ExplicitControls &c) {
                       if (c.members.width() != n - 1) {
                           throw std::invalid_argument("explicit control set must cover {0,1}^(n-1)");
                       }
                   },
                   [&](const SeededControls &c) {
                       if (!(c.density >= 0 && c.density <= 1)) {
                           throw std::invalid_argument("seeded control density must lie in [0, 1]");
                       }
                   },
                   [&](const BlockPredicate &b) {
                       if (b.block_len < 1 || b.subset.width() != b.block_len || b.block < 0 ||
                           (b.block + 1) * b.block_len > n) {
                           throw std::invalid_argument("block predicate does not fit the input");
                       }
                       if (e.target / b.block_len == b.block) {
                           throw std::invalid_argument("block predicate may not read the target's block");
                       }
                   },
               },
               e.controls);
}

void validate(const ControlledPhase &e, int n) {
    if (!(e.theta >= 0 && e.theta < kTwoPi)) {
        throw std::invalid_argument("phase angle must lie in [0, 2 pi)");
    }
    if (const auto *c = std::get_if<ExplicitControls>(&e.set); c && c->members.width() != n) {
        throw std::invalid_argument("explicit phase set must cover {0,1}^n");
    }
    if (const auto *c = std::get_if<SeededControls>(&e.set); c && !(c->density >= 0 && c->density <= 1)) {
        throw std::invalid_argument("seeded phase set density must lie in [0, 1]");
    }
}

void validate(const PhasePartition &e, int n) {
    if (e.num_qubits() != n) {
        throw std::invalid_argument("phase partition size does not match n");
    }
    for (size_t j = 0; j < e.angles.size(); j++) {
        if (!(e.angles[j] >= 0 && e.angles[j] < kTwoPi) || (j > 0 && !(e.angles[j] > e.angles[j - 1]))) {
            throw std::invalid_argument("partition angles must be strictly increasing in [0, 2 pi)");
        }
    }
    for (uint32_t part : e.assignment) {
        if (part >= e.angles.size()) {
            throw std::invalid_argument("partition assigns an input to a missing part");
        }
    }
}

double wrap_angle(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0;
    }
    return r + 0.0;
}

double circular_distance(double a, double b) {
    double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

StateVector apply_bitflip(const ControlledBitFlip &e, const StateVector &phi) {
    int n = phi.num_qubits();
    validate(e, n);
    StateVector out = phi;
    uint64_t flip = uint64_t{1} << e.target;
    with_membership(e, [&](auto member) {
        for (uint64_t y = 0; y < (uint64_t{1} << (n - 1)); y++) {
            uint64_t x0 = insert_bit(y, e.target, false);
            if (member(y, x0)) {
                std::swap(out[x0], out[x0 | flip]);
            }
        }
        return 0;
    });
    return out;
}

StateVector apply_phase(const ControlledPhase &e, const StateVector &phi) {
    validate(e, phi.num_qubits());
    StateVector out = phi;
    Amplitude factor = std::polar(1.0, e.theta);
    for (uint64_t x = 0; x < out.size(); x++) {
        if (e.contains(x)) {
            out[x] *= factor;
        }
    }
    return out;
}

StateVector apply_partitioned_phase(const PhasePartition &e, const StateVector &phi) {
    validate(e, phi.num_qubits());
    std::vector<Amplitude> factors;
    for (double a : e.angles) {
        factors.push_back(std::polar(1.0, a));
    }
    StateVector out = phi;
    for (uint64_t x = 0; x < out.size(); x++) {
        out[x] *= factors[e.assignment[x]];
    }
    return out;
}

StateVector apply(const ErrorOperator &e, const StateVector &phi) {
    return std::visit(overloaded{
                          [&](const ControlledBitFlip &b) { return apply_bitflip(b, phi); },
                          [&](const ControlledPhase &p) { return apply_phase(p, phi); },
                          [&](const PhasePartition &p) { return apply_partitioned_phase(p, phi); },
                      },
                      e);
}

Amplitude bitflip_correction(const StateVector &phi, const StateVector &psi, const ControlledBitFlip &e) {
    require_same(phi, psi, "bitflip_correction");
    return sum_over_controls<Amplitude>(e, phi.num_qubits(), [&](uint64_t x0, uint64_t x1) {
        return std::conj(psi[x0] - psi[x1]) * (phi[x0] - phi[x1]);
    });
}

Amplitude bitflip_form(const StateVector &phi, const StateVector &psi, const ControlledBitFlip &e) {
    Amplitude correction = bitflip_correction(phi, psi, e);
    return inner(psi, phi) - correction;
}

double bitflip_expectation(const StateVector &phi, const ControlledBitFlip &e) {
    double drop = sum_over_controls<double>(e, phi.num_qubits(),
                                            [&](uint64_t x0, uint64_t x1) { return std::norm(phi[x0] - phi[x1]); });
    return phi.norm_squared() - drop;
}

double vector_influence(const StateVector &phi, int qubit) {
    int n = phi.num_qubits();
    ControlledBitFlip full{qubit, AllControls{}};
    double pairs = sum_over_controls<double>(full, n,
                                             [&](uint64_t x0, uint64_t x1) { return std::norm(phi[x0] - phi[x1]); });
    // Each unordered pair is counted once but appears twice in E_x.
    return std::ldexp(pairs, 1 - n);
}

StructuredEvaluator::StructuredEvaluator(const BooleanFunctionTable &f, const CodeParams &p)
    : f_(f), params_(p), sum_f_(f.total()) {
    if (f.width() != p.block_len) {
        throw std::invalid_argument("structured evaluator: function width != block length");
    }
    for (int j = 0; j < p.block_len; j++) {
        pivotal_.push_back(pivotal_count(f, j));
    }
    double same = std::ldexp(0.25, 2 * p.block_len);
    standard_ = {same, same, sum_f_ * sum_f_};
}

bool StructuredEvaluator::supports(const ControlSetSpec &controls) {
    return std::holds_alternative<AllControls>(controls) || std::holds_alternative<EmptyControls>(controls) ||
           std::holds_alternative<BlockPredicate>(controls);
}

double StructuredEvaluator::restricted_form(const CodewordCoeffs &c, const std::vector<PairFactor> &factors, int skip,
                                            int side) const {
    uint64_t dim = params_.dimension();
    Amplitude acc = 0;
    for (uint64_t r = 0; r < dim; r++) {
        if (skip >= 0 && static_cast<int>((r >> skip) & 1) != side) {
            continue;
        }
        Amplitude row = 0;
        for (uint64_t col = 0; col < dim; col++) {
            if (skip >= 0 && static_cast<int>((col >> skip) & 1) != side) {
                continue;
            }
            double g = 1;
            for (int k = 0; k < params_.pairs; k++) {
                if (k == skip) {
                    continue;
                }
                int a = static_cast<int>((r >> k) & 1);
                int b = static_cast<int>((col >> k) & 1);
                const PairFactor &pf = factors[k];
                g *= a != b ? pf.differ : (a == 0 ? pf.same0 : pf.same1);
            }
            row += c.alpha[col] * g;
        }
        acc += std::conj(c.alpha[r]) * row;
    }
    return acc.real();
}

double StructuredEvaluator::norm_squared(const CodewordCoeffs &c) const {
    if (!(c.params == params_) || c.alpha.size() != params_.dimension()) {
        throw std::invalid_argument("structured evaluator: codeword does not match code parameters");
    }
    std::vector<PairFactor> factors(params_.pairs, standard_);
    return restricted_form(c, factors, -1, 0);
}

Amplitude StructuredEvaluator::bitflip_form(const CodewordCoeffs &c, const ControlledBitFlip &e) const {
    validate(e, params_.n);
    double norm = norm_squared(c);
    if (std::holds_alternative<EmptyControls>(e.controls)) {
        return norm;
    }
    if (!supports(e.controls)) {
        throw std::invalid_argument("structured evaluator supports only all, empty and block controls");
    }

    int n1 = params_.block_len;
    int target_block = e.target / n1;
    int var = e.target % n1;
    int pair = target_block / 2;
    int side = target_block % 2;

    std::vector<PairFactor> factors(params_.pairs, standard_);
    double partner = std::ldexp(1.0, n1);
    if (const auto *b = std::get_if<BlockPredicate>(&e.controls)) {
        if (b->block_len != n1) {
            throw std::invalid_argument("block predicate length does not match the code's block length");
        }
        auto members = static_cast<double>(b->subset.popcount());
        if (b->block / 2 == pair) {
            partner = members;
        } else {
            double sum_in = 0;
            for (uint64_t u = 0; u < b->subset.size(); u++) {
                if (b->subset.get(u)) {
                    sum_in += f_.value(u);
                }
            }
            double same = members * std::ldexp(0.25, n1);
            factors[b->block / 2] = {same, same, sum_in * sum_f_};
        }
    }

    // Half the sum over all x of |phi(x) - phi(x ^ e_i)|^2 restricted to the
    // controls; the target block contributes its pivotal count.
    double drop = 0.5 * static_cast<double>(pivotal_[var]) * partner * restricted_form(c, factors, pair, side);
    return norm - drop;
}

Amplitude structured_bitflip_form(const BooleanFunctionTable &f, const CodewordCoeffs &c, const ControlledBitFlip &e) {
    return StructuredEvaluator(f, c.params).bitflip_form(c, e);
}

SingletonRange::SingletonRange(int n) : n_(n) {
    if (n < 1 || n - 1 > kMaxTableWidth) {
        throw std::invalid_argument("singleton enumeration needs 1 <= n and n - 1 <= " +
                                    std::to_string(kMaxTableWidth));
    }
}

ControlledBitFlip SingletonRange::operator[](uint64_t k) const {
    uint64_t per_target = uint64_t{1} << (n_ - 1);
    return ControlledBitFlip{static_cast<int>(k / per_target), SingletonControl{k % per_target}};
}

SingletonRange enumerate_singletons(int n) {
    return SingletonRange(n);
}

PhasePartition compose_phases(const ControlledPhase &x, const ControlledPhase &y, int n) {
    validate(x, n);
    validate(y, n);
    uint64_t size = uint64_t{1} << n;
    std::vector<double> phase(size);
    std::map<double, uint32_t> distinct;
    for (uint64_t v = 0; v < size; v++) {
        double p = (y.contains(v) ? y.theta : 0.0) - (x.contains(v) ? x.theta : 0.0);
        phase[v] = wrap_angle(p);
        distinct.emplace(phase[v], 0);
    }
    PhasePartition out;
    for (auto &[angle, index] : distinct) {
        index = static_cast<uint32_t>(out.angles.size());
        out.angles.push_back(angle);
    }
    out.assignment.resize(size);
    for (uint64_t v = 0; v < size; v++) {
        out.assignment[v] = distinct.at(phase[v]);
    }
    return out;
}

}  // namespace aqec
