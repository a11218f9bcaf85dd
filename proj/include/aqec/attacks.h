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

#ifndef AQEC_ATTACKS_H
#define AQEC_ATTACKS_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aqec/codespace.h"
#include "aqec/noise.h"

namespace aqec {

/// phi(x) = magnitude[x] e^{i angle[x]}; zero amplitudes carry angle 0.
struct PolarDecomposition {
    std::vector<double> magnitude;
    std::vector<double> angle;
};

PolarDecomposition polar_decompose(const StateVector &phi);

/// sum_x |phi(x)| |psi(x)|.
double abs_overlap(const StateVector &phi, const StateVector &psi);

struct BoostedPair {
    StateVector phi;
    StateVector psi;
    double overlap = 0;
    double original_overlap = 0;
    /// True when the rotated pair (phi +- psi) / sqrt 2 was returned.
    bool rotated = false;
};

/// Returns whichever of (phi, psi) and ((phi + psi)/sqrt 2, (phi - psi)/sqrt 2)
/// has the larger absolute-value overlap; for orthonormal inputs that
/// overlap is at least 1/2.
BoostedPair boost_overlap(const StateVector &phi, const StateVector &psi, double tol = 1e-9);

enum class GridMode {
    /// Theta_k = (0, pi/2^k, ..., (2^k - 1) pi / 2^k): 2^k angles in [0, pi).
    paper,
    /// 2^(k+1) angles 2 pi j / 2^(k+1) covering the whole circle.
    full,
};

std::string_view to_string(GridMode mode);
GridMode parse_grid_mode(std::string_view text);

constexpr int kMaxGridLevel = 12;

std::vector<double> phase_grid(int level, GridMode mode);

struct PhaseAttack {
    PhasePartition partition;
    GridMode mode = GridMode::full;
    /// Circular residual |theta_x - theta'_x - theta_j| per input.
    std::vector<double> residual;
    /// Largest residual over inputs with |phi(x)| |psi(x)| > 0.
    double max_residual = 0;
    /// Rotation beta added to every target phase (0 unless rotated).
    double rotation = 0;
};

/// Assigns each x to the grid angle nearest (on the circle) to the phase
/// difference theta_x - theta'_x, so E aligns psi's phases with phi's.
/// Inputs with phi(x) psi(x) = 0 go to part 0.
PhaseAttack build_phase_partition(const StateVector &phi, const StateVector &psi, int level,
                                  GridMode mode = GridMode::full, int dense_cap = kDefaultDenseCap);

/// Paper-grid partition maximizing |phi^* E psi| over target rotations
/// beta = 2 pi m / rotations: each x gets the grid angle nearest to
/// theta_x - theta'_x + beta. At level 2 every result is X^* Y-realizable.
PhaseAttack build_rotated_partition(const StateVector &phi, const StateVector &psi, int level, int rotations = 64,
                                    int dense_cap = kDefaultDenseCap);

/// |phi^* E psi| for a partitioned phase E.
double attack_value(const StateVector &phi, const StateVector &psi, const PhasePartition &e);

/// X, Y with angles in {0, pi/4, pi/2} and a global phase such that
/// e^{i global} X^* Y acts like the partition.
struct XYRealization {
    ControlledPhase x;
    ControlledPhase y;
    double global_phase = 0;
};

/// Realizes a partition using at most 4 non-empty parts as X^* Y with X, Y
/// single elements of the restricted phase family, up to a global phase.
/// Returns nullopt when the used angles fit no such pattern. Throws when
/// more than 4 parts are used.
std::optional<XYRealization> realize_as_xy(const PhasePartition &e);

/// Residual of the exact-correction condition for one operator on an
/// orthonormal pair: max(|psi^* E phi|, |phi^* E phi - psi^* E psi|). Zero
/// iff some constant c(E) satisfies phi_a^* E phi_b = c(E) phi_a^* phi_b on
/// the pair.
double exactness_residual(Amplitude phi_form, Amplitude psi_form, Amplitude cross_form);

struct ImpossibilityWitness {
    ControlledBitFlip error;
    /// Input q with bit `error.target` clear; the flip pairs q with q ^ e_i.
    uint64_t q = 0;
    Amplitude phi_form;
    Amplitude psi_form;
    Amplitude cross_form;
    double residual = 0;
};

/// Scans singleton flips E_{i,{q-hat}} (i ascending, then q ascending) and
/// returns the first whose exactness residual exceeds tol.
std::optional<ImpossibilityWitness> exact_impossibility_witness(const StateVector &phi, const StateVector &psi,
                                                               double tol);

}  // namespace aqec

#endif
