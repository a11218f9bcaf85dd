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

#ifndef AQEC_VERIFY_H
#define AQEC_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aqec/attacks.h"
#include "aqec/boolfn.h"
#include "aqec/codespace.h"
#include "aqec/noise.h"

namespace aqec {

struct VerificationConfig {
    uint64_t seed = 1;
    /// Random codewords (or random operator pairs, for separation) on top of
    /// the deterministic corner cases.
    int codeword_samples = 100;
    /// Random control sets drawn per codeword.
    int error_draws = 200;
    double tol = 1e-9;
    int dense_cap = kDefaultDenseCap;
    /// Evaluate immunity through StructuredEvaluator instead of dense vectors.
    bool structured = false;
    std::optional<double> epsilon_claim;
    std::optional<double> alpha_claim;
    /// Phase-attack grid for separation checks on the phase family.
    int attack_level = 2;
    GridMode attack_grid = GridMode::full;
    /// Appended to the codeword suite of immunity and lemma checks.
    std::vector<CodewordCoeffs> extra_codewords;
    /// Evaluated against every codeword by immunity checks.
    std::vector<ControlledBitFlip> extra_errors;
    /// Evaluated as X = Y = E on every pair by separation checks.
    std::vector<ErrorOperator> extra_separation_errors;
};

void validate(const VerificationConfig &cfg);

/// (codeword, E) reaching the largest 1 - |phi^* E phi| / ||phi||^2.
struct ImmunityWitness {
    CodewordCoeffs codeword;
    ControlledBitFlip error;
    bool structured = false;
};

/// (phi, psi, X, Y) reaching the largest |(X phi)^* (Y psi)|.
struct SeparationWitness {
    StateVector phi;
    StateVector psi;
    ErrorOperator x;
    ErrorOperator y;
};

/// (codeword, qubit) reaching the largest 2^(n-1) I_i(phi) / ||phi||^2.
struct InfluenceWitness {
    CodewordCoeffs codeword;
    int qubit = 0;
};

/// Gram entry with the largest deviation from 2^(n-2B) Identity.
struct GramWitness {
    uint64_t row = 0;
    uint64_t col = 0;
    Amplitude value;
};

using ReportWitness = std::variant<std::monostate, ImmunityWitness, SeparationWitness, InfluenceWitness, GramWitness>;

struct VerificationReport {
    std::string kind;
    int n = 0;
    std::optional<int> pairs;
    /// Measured max influence of the building block.
    std::optional<double> s;
    /// Headline worst-case statistic and the bound it is compared against.
    double measured = 0;
    std::optional<double> bound;
    bool pass = false;
    ReportWitness witness;
    uint64_t seed = 0;
    uint64_t evaluations = 0;
    double runtime_ms = 0;
    /// Extra named statistics (reported, not asserted).
    std::vector<std::pair<std::string, double>> extras;
};

/// Recomputes the witness statistic from scratch. `f` is needed for
/// immunity, influence and Gram witnesses.
double reevaluate_witness(const VerificationReport &report, const BooleanFunctionTable *f,
                          int dense_cap = kDefaultDenseCap);

/// Immunity of the block code against controlled bit flips: the worst
/// 1 - |phi^* E phi| over sampled unit codewords and every full flip,
/// seeded random control sets, and (n <= 5) every control set, compared
/// against 2s for the measured max influence s of f.
VerificationReport check_immunity(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg);

enum class ErrorFamily { bitflip, phaseflip };

using StatePair = std::pair<StateVector, StateVector>;

/// max |phi^* X^* Y psi| over the given orthonormal pairs and sampled X, Y
/// from the family. For the phase family each pair is also boosted and
/// attacked with a phase partition (full grid, plus a realizable paper-grid
/// variant). pass = measured <= alpha_claim + tol (true without a claim).
VerificationReport check_separation(const std::vector<StatePair> &pairs, ErrorFamily family,
                                    const VerificationConfig &cfg);

/// max(|psi^* E phi|, |phi^* E phi - psi^* E psi|) for an orthonormal pair.
double check_exactness(const StateVector &phi, const StateVector &psi, const ErrorOperator &e, double tol);

struct BoundCheck {
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
};

/// |phi^* E_{i,S} phi - phi^* phi| against 2^(n-1) I_i(phi).
BoundCheck check_sensitivity_bound(const StateVector &phi, const ControlledBitFlip &e, double tol = 1e-9,
                                   int dense_cap = kDefaultDenseCap);

/// 2^(n-1) I(phi) against 2s ||phi||^2 over corner-case and random codewords.
VerificationReport check_lemma_w(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg);

/// Gram matrix against 2^(n-2B) Identity, dense when n fits the cap.
VerificationReport check_gram(const BooleanFunctionTable &f, const CodeParams &p, const VerificationConfig &cfg);

/// Deterministic corner cases followed by `cfg.codeword_samples` random
/// codewords, all unit norm.
std::vector<CodewordCoeffs> codeword_suite(const CodeParams &p, const VerificationConfig &cfg);

}  // namespace aqec

#endif
