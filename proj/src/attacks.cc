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

#include "aqec/attacks.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleMatchTol = 1e-9;

// Index of the grid angle nearest to `target` on the circle; ties go to
// the smaller index.
size_t nearest_grid_index(const std::vector<double> &grid, double spacing, double target) {
    auto last = static_cast<double>(grid.size() - 1);
    double pos = target / spacing;
    std::array<double, 4> candidates = {
        std::clamp(std::floor(pos), 0.0, last),
        std::clamp(std::ceil(pos), 0.0, last),
        0.0,
        last,
    };
    size_t best = grid.size();
    double best_dist = 0;
    for (double c : candidates) {
        auto j = static_cast<size_t>(c);
        double d = circular_distance(grid[j], target);
        if (best == grid.size() || d < best_dist || (d == best_dist && j < best)) {
            best = j;
            best_dist = d;
        }
    }
    return best;
}

}  // namespace

PolarDecomposition polar_decompose(const StateVector &phi) {
    PolarDecomposition out;
    out.magnitude.resize(phi.size());
    out.angle.resize(phi.size());
    for (uint64_t x = 0; x < phi.size(); x++) {
        out.magnitude[x] = std::abs(phi[x]);
        out.angle[x] = out.magnitude[x] > 0 ? wrap_angle(std::arg(phi[x])) : 0.0;
    }
    return out;
}

double abs_overlap(const StateVector &phi, const StateVector &psi) {
    if (phi.num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("abs_overlap: dimension mismatch");
    }
    double s = 0;
    for (uint64_t x = 0; x < phi.size(); x++) {
        s += std::abs(phi[x]) * std::abs(psi[x]);
    }
    return s;
}

BoostedPair boost_overlap(const StateVector &phi, const StateVector &psi, double tol) {
    require_orthonormal(phi, psi, tol, "boost_overlap");
    double before = abs_overlap(phi, psi);
    const double h = std::numbers::sqrt2 / 2;
    StateVector sum = h * (phi + psi);
    StateVector diff = h * (phi - psi);
    double after = abs_overlap(sum, diff);
    if (after > before) {
        return {std::move(sum), std::move(diff), after, before, true};
    }
    return {phi, psi, before, before, false};
}

std::string_view to_string(GridMode mode) {
    return mode == GridMode::paper ? "paper" : "full";
}

GridMode parse_grid_mode(std::string_view text) {
    if (text == "paper") {
        return GridMode::paper;
    }
    if (text == "full") {
        return GridMode::full;
    }
    throw std::invalid_argument("grid mode must be 'paper' or 'full'");
}

std::vector<double> phase_grid(int level, GridMode mode) {
    if (level < 1 || level > kMaxGridLevel) {
        throw std::invalid_argument("grid level must be in [1, " + std::to_string(kMaxGridLevel) + "]");
    }
    size_t count = size_t{1} << (mode == GridMode::paper ? level : level + 1);
    double spacing = std::ldexp(kPi, -level);
    std::vector<double> grid(count);
    for (size_t j = 0; j < count; j++) {
        grid[j] = static_cast<double>(j) * spacing;
    }
    return grid;
}

namespace {

PhaseAttack partition_toward(const StateVector &phi, const StateVector &psi, int level, GridMode mode, double rotation) {
    std::vector<double> grid = phase_grid(level, mode);
    double spacing = std::ldexp(kPi, -level);

    PhaseAttack out;
    out.mode = mode;
    out.rotation = rotation;
    out.partition.level = level;
    out.partition.angles = grid;
    out.partition.assignment.assign(phi.size(), 0);
    out.residual.assign(phi.size(), 0);
    for (uint64_t x = 0; x < phi.size(); x++) {
        if (std::abs(phi[x]) == 0 || std::abs(psi[x]) == 0) {
            continue;
        }
        double target = wrap_angle(std::arg(phi[x]) - std::arg(psi[x]) + rotation);
        size_t j = nearest_grid_index(grid, spacing, target);
        out.partition.assignment[x] = static_cast<uint32_t>(j);
        out.residual[x] = circular_distance(grid[j], target);
        out.max_residual = std::max(out.max_residual, out.residual[x]);
    }
    return out;
}

void require_pair_shape(const StateVector &phi, const StateVector &psi, int dense_cap) {
    if (phi.num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("phase partition: dimension mismatch");
    }
    check_dense_cap(phi.num_qubits(), dense_cap);
}

}  // namespace

PhaseAttack build_phase_partition(const StateVector &phi, const StateVector &psi, int level, GridMode mode,
                                  int dense_cap) {
    require_pair_shape(phi, psi, dense_cap);
    return partition_toward(phi, psi, level, mode, 0);
}

PhaseAttack build_rotated_partition(const StateVector &phi, const StateVector &psi, int level, int rotations,
                                    int dense_cap) {
    require_pair_shape(phi, psi, dense_cap);
    if (rotations < 1) {
        throw std::invalid_argument("build_rotated_partition: rotations must be positive");
    }
    std::optional<PhaseAttack> best;
    double best_value = -1;
    for (int m = 0; m < rotations; m++) {
        double beta = 2 * kPi * m / rotations;
        PhaseAttack candidate = partition_toward(phi, psi, level, GridMode::paper, beta);
        double v = attack_value(phi, psi, candidate.partition);
        if (v > best_value) {
            best_value = v;
            best = std::move(candidate);
        }
    }
    return std::move(*best);
}

double attack_value(const StateVector &phi, const StateVector &psi, const PhasePartition &e) {
    return std::abs(inner(phi, apply_partitioned_phase(e, psi)));
}

std::optional<XYRealization> realize_as_xy(const PhasePartition &e) {
    int n = e.num_qubits();
    validate(e, n);
    std::vector<uint32_t> used;
    {
        std::vector<bool> seen(e.angles.size(), false);
        for (uint32_t part : e.assignment) {
            seen[part] = true;
        }
        for (uint32_t j = 0; j < seen.size(); j++) {
            if (seen[j]) {
                used.push_back(j);
            }
        }
    }
    if (used.size() > 4) {
        throw std::invalid_argument("realize_as_xy: partition uses " + std::to_string(used.size()) +
                                    " parts; at most 4 are realizable");
    }

    const std::array<double, 3> thetas = {0, kPi / 4, kPi / 2};
    // Combination c: bit 0 = member of X's set, bit 1 = member of Y's set.
    for (double tx : thetas) {
        for (double ty : thetas) {
            std::array<double, 4> value = {0, -tx, ty, ty - tx};
            for (uint32_t anchor : used) {
                for (double v : value) {
                    double global = wrap_angle(e.angles[anchor] - v);
                    std::vector<int> combo(e.angles.size(), -1);
                    bool ok = true;
                    for (uint32_t j : used) {
                        for (int c = 0; c < 4 && combo[j] < 0; c++) {
                            if (circular_distance(global + value[c], e.angles[j]) <= kAngleMatchTol) {
                                combo[j] = c;
                            }
                        }
                        ok = ok && combo[j] >= 0;
                    }
                    if (!ok) {
                        continue;
                    }
                    ExplicitControls sx{BitTable(n)};
                    ExplicitControls sy{BitTable(n)};
                    for (uint64_t x = 0; x < e.assignment.size(); x++) {
                        int c = combo[e.assignment[x]];
                        sx.members.set(x, c & 1);
                        sy.members.set(x, (c >> 1) & 1);
                    }
                    return XYRealization{ControlledPhase{std::move(sx), tx}, ControlledPhase{std::move(sy), ty},
                                         global};
                }
            }
        }
    }
    return std::nullopt;
}

double exactness_residual(Amplitude phi_form, Amplitude psi_form, Amplitude cross_form) {
    return std::max(std::abs(cross_form), std::abs(phi_form - psi_form));
}

std::optional<ImpossibilityWitness> exact_impossibility_witness(const StateVector &phi, const StateVector &psi,
                                                               double tol) {
    require_orthonormal(phi, psi, std::max(tol, 1e-9), "exact_impossibility_witness");
    int n = phi.num_qubits();
    double phi_norm = phi.norm_squared();
    double psi_norm = psi.norm_squared();
    Amplitude cross_base = inner(psi, phi);
    for (const ControlledBitFlip &e : enumerate_singletons(n)) {
        Amplitude phi_form = phi_norm - bitflip_correction(phi, phi, e);
        Amplitude psi_form = psi_norm - bitflip_correction(psi, psi, e);
        Amplitude cross_form = cross_base - bitflip_correction(phi, psi, e);
        double residual = exactness_residual(phi_form, psi_form, cross_form);
        if (residual > tol) {
            uint64_t q = insert_bit(std::get<SingletonControl>(e.controls).point, e.target, false);
            return ImpossibilityWitness{e, q, phi_form, psi_form, cross_form, residual};
        }
    }
    return std::nullopt;
}

}  // namespace aqec
