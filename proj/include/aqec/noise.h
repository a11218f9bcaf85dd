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

#ifndef AQEC_NOISE_H
#define AQEC_NOISE_H

#include <cstdint>
#include <iterator>
#include <optional>
#include <variant>
#include <vector>

#include "aqec/bits.h"
#include "aqec/boolfn.h"
#include "aqec/codespace.h"

namespace aqec {

// Control-set shapes. For a bit flip on target i the set lives in
// {0,1}^(n-1) and is tested against x-hat (x with bit i removed); for a
// phase the set lives in {0,1}^n and is tested against x.

struct AllControls {
    bool operator==(const AllControls &) const = default;
};
struct EmptyControls {
    bool operator==(const EmptyControls &) const = default;
};
/// The single point `point`.
struct SingletonControl {
    uint64_t point = 0;
    bool operator==(const SingletonControl &) const = default;
};
/// Membership bitset over the whole control space.
struct ExplicitControls {
    BitTable members;
    bool operator==(const ExplicitControls &) const = default;
};
/// Each point is a member independently with probability `density`, decided
/// by a counter-based hash of (seed, point).
struct SeededControls {
    double density = 0.5;
    uint64_t seed = 0;
    bool operator==(const SeededControls &) const = default;
};
/// Member iff block `block` of the full input x lies in `subset`. The block
/// must not contain the flip target, so membership is a function of x-hat.
struct BlockPredicate {
    int block = 0;
    int block_len = 1;
    BitTable subset;
    bool operator==(const BlockPredicate &) const = default;
};

using ControlSetSpec =
    std::variant<AllControls, EmptyControls, SingletonControl, ExplicitControls, SeededControls, BlockPredicate>;
using PhaseSetSpec = std::variant<AllControls, EmptyControls, ExplicitControls, SeededControls>;

bool seeded_member(uint64_t seed, double density, uint64_t point);

/// E_{i,S}: applies X to qubit `target` when x-hat lies in `controls`.
struct ControlledBitFlip {
    int target = 0;
    ControlSetSpec controls = AllControls{};

    bool fires(uint64_t x) const;
    bool operator==(const ControlledBitFlip &) const = default;
};

/// E_{S,theta}: multiplies amplitudes of x in `set` by e^{i theta}.
struct ControlledPhase {
    PhaseSetSpec set = AllControls{};
    double theta = 0;

    bool contains(uint64_t x) const;
    bool operator==(const ControlledPhase &) const = default;
};

/// E_{S-bar,Theta}: x in part j gets phase e^{i angles[j]}.
struct PhasePartition {
    /// Grid level k when the angles come from a phase grid.
    std::optional<int> level;
    std::vector<uint32_t> assignment;
    std::vector<double> angles;

    int num_qubits() const;
    bool operator==(const PhasePartition &) const = default;
};

using ErrorOperator = std::variant<ControlledBitFlip, ControlledPhase, PhasePartition>;

/// Throws std::invalid_argument if `e` is not a valid operator on n qubits.
void validate(const ControlledBitFlip &e, int n);
void validate(const ControlledPhase &e, int n);
void validate(const PhasePartition &e, int n);

/// Maps any angle into [0, 2 pi).
double wrap_angle(double theta);
/// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

StateVector apply_bitflip(const ControlledBitFlip &e, const StateVector &phi);
StateVector apply_phase(const ControlledPhase &e, const StateVector &phi);
StateVector apply_partitioned_phase(const PhasePartition &e, const StateVector &phi);
StateVector apply(const ErrorOperator &e, const StateVector &phi);

/// sum over y in S of conj(psi(y,0) - psi(y,1)) (phi(y,0) - phi(y,1)),
/// where (y,b) is the input with x-hat = y and target bit b.
Amplitude bitflip_correction(const StateVector &phi, const StateVector &psi, const ControlledBitFlip &e);

/// psi^* E phi through the pair-difference identity
///   psi^* E phi = psi^* phi - sum_{y in S} conj(psi(y,0) - psi(y,1)) (phi(y,0) - phi(y,1)).
/// Conjugation sits on the psi difference (inner products are
/// conjugate-linear on the left).
Amplitude bitflip_form(const StateVector &phi, const StateVector &psi, const ControlledBitFlip &e);

/// phi^* E phi = ||phi||^2 - sum_{y in S} |phi(y,0) - phi(y,1)|^2; always real.
double bitflip_expectation(const StateVector &phi, const ControlledBitFlip &e);

/// The complex influence I_i(phi) = E_x |phi(x) - phi(x ^ e_i)|^2.
double vector_influence(const StateVector &phi, int qubit);

/// Evaluates phi^* E phi for phi in the block code without materializing
/// phi. Supports All, Empty and BlockPredicate controls; the cost is
/// O(4^B B) per call after O(n' 2^n') setup.
class StructuredEvaluator {
   public:
    StructuredEvaluator(const BooleanFunctionTable &f, const CodeParams &p);

    static bool supports(const ControlSetSpec &controls);

    /// ||phi||^2 from the structured Gram matrix (exact for any f).
    double norm_squared(const CodewordCoeffs &c) const;
    Amplitude bitflip_form(const CodewordCoeffs &c, const ControlledBitFlip &e) const;

    const CodeParams &params() const {
        return params_;
    }

   private:
    struct PairFactor {
        double same0;
        double same1;
        double differ;
    };
    // sum_{z,z' : z_skip = z'_skip = side} conj(a_z) a_z' prod_{k != skip} G_k(z_k, z'_k).
    // skip < 0 keeps every pair.
    double restricted_form(const CodewordCoeffs &c, const std::vector<PairFactor> &factors, int skip, int side) const;

    BooleanFunctionTable f_;
    CodeParams params_;
    std::vector<uint64_t> pivotal_;
    double sum_f_;
    PairFactor standard_;
};

Amplitude structured_bitflip_form(const BooleanFunctionTable &f, const CodewordCoeffs &c, const ControlledBitFlip &e);

/// All n 2^(n-1) singleton flips E_{i,{j}}, ordered by target then point.
class SingletonRange {
   public:
    explicit SingletonRange(int n);

    uint64_t size() const {
        return uint64_t(n_) << (n_ - 1);
    }
    ControlledBitFlip operator[](uint64_t k) const;

    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = ControlledBitFlip;
        using difference_type = std::ptrdiff_t;

        iterator(const SingletonRange *range, uint64_t k) : range_(range), k_(k) {
        }
        ControlledBitFlip operator*() const {
            return (*range_)[k_];
        }
        iterator &operator++() {
            k_++;
            return *this;
        }
        bool operator==(const iterator &other) const = default;

       private:
        const SingletonRange *range_;
        uint64_t k_;
    };

    iterator begin() const {
        return {this, 0};
    }
    iterator end() const {
        return {this, size()};
    }

   private:
    int n_;
};

SingletonRange enumerate_singletons(int n);

/// X^* Y for two controlled phases, as a partition by distinct phase value
/// (theta_Y [x in S_Y] - theta_X [x in S_X], wrapped to [0, 2 pi)).
PhasePartition compose_phases(const ControlledPhase &x, const ControlledPhase &y, int n);

}  // namespace aqec

#endif
