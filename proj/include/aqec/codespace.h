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

#ifndef AQEC_CODESPACE_H
#define AQEC_CODESPACE_H

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "aqec/bits.h"
#include "aqec/boolfn.h"

namespace aqec {

using Amplitude = std::complex<double>;

/// Default limit on n for anything that materializes 2^n amplitudes.
constexpr int kDefaultDenseCap = 24;

/// Shape of the [n, B] block code: n qubits split into 2B blocks of
/// block_len = n / (2B) variables, in the order x_{1,0}, x_{1,1}, ...,
/// x_{B,0}, x_{B,1}. Block (pair, side) starts at bit (2 pair + side) block_len.
struct CodeParams {
    int n = 0;
    int pairs = 0;
    int block_len = 0;

    int block_index(int pair, int side) const {
        return 2 * pair + side;
    }
    uint64_t dimension() const {
        return uint64_t{1} << pairs;
    }
    /// log2 of ||f_z||^2 = 2^(n - 2B).
    int basis_norm_exponent() const {
        return n - 2 * pairs;
    }
    bool operator==(const CodeParams &other) const = default;
};

/// Fails unless 2B divides n.
CodeParams make_params(int n, int pairs);

/// Raw bits of block (pair, side) of x. Indices are 0-based.
inline uint64_t block_bits(const CodeParams &p, uint64_t x, int pair, int side) {
    return (x >> (p.block_index(pair, side) * p.block_len)) & low_mask(p.block_len);
}

BitString block_project(const CodeParams &p, const BitString &x, int pair, int side);

/// Dense amplitude table indexed by x in {0,1}^n.
class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(int num_qubits);
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    static StateVector basis_state(int num_qubits, uint64_t x);

    int num_qubits() const {
        return n_;
    }
    uint64_t size() const {
        return amp_.size();
    }
    Amplitude &operator[](uint64_t x) {
        return amp_[x];
    }
    const Amplitude &operator[](uint64_t x) const {
        return amp_[x];
    }
    std::span<const Amplitude> amplitudes() const {
        return amp_;
    }
    std::span<Amplitude> amplitudes() {
        return amp_;
    }

    double norm_squared() const;
    StateVector &operator*=(Amplitude c);
    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);

   private:
    int n_ = 0;
    std::vector<Amplitude> amp_;
};

StateVector operator*(Amplitude c, StateVector v);
StateVector operator+(StateVector a, const StateVector &b);
StateVector operator-(StateVector a, const StateVector &b);

/// <left, right>, conjugate-linear in `left`.
Amplitude inner(const StateVector &left, const StateVector &right);

/// Throws std::invalid_argument unless |<a,b>| <= tol and both norms are 1 within tol.
void require_orthonormal(const StateVector &a, const StateVector &b, double tol, const char *context);
bool is_orthonormal(const StateVector &a, const StateVector &b, double tol);

/// Coefficients of phi = sum_z alpha_z f_z over z in {0,1}^B (bit k of z is z_{k+1}).
struct CodewordCoeffs {
    CodeParams params;
    std::vector<Amplitude> alpha;

    /// ||phi||^2 = 2^(n-2B) sum_z |alpha_z|^2 (valid when f is balanced).
    double norm_squared() const;
};

/// f_z(x) = prod_k f(x_{k, z_k}); |f_z(x)| = 2^-B exactly.
double fz_value(const BooleanFunctionTable &f, const CodeParams &p, uint64_t z, uint64_t x);
Amplitude eval_fz(const BooleanFunctionTable &f, const CodeParams &p, const BitString &z, const BitString &x);

/// phi(x) evaluated from coefficients, without materializing phi.
Amplitude eval_codeword(const BooleanFunctionTable &f, const CodewordCoeffs &c, uint64_t x);

StateVector materialize_basis(const BooleanFunctionTable &f, const CodeParams &p, uint64_t z,
                              int dense_cap = kDefaultDenseCap);
StateVector materialize_codeword(const BooleanFunctionTable &f, const CodewordCoeffs &c,
                                 int dense_cap = kDefaultDenseCap);

/// i.i.d. complex normal coefficients, scaled to a unit-norm codeword.
CodewordCoeffs sample_codeword(const CodeParams &p, uint64_t seed);
/// Unit-norm f_z.
CodewordCoeffs basis_codeword(const CodeParams &p, uint64_t z);
/// alpha_z = 1 for every z, normalized.
CodewordCoeffs uniform_codeword(const CodeParams &p);
/// alpha_z = +-1 with seeded random signs, normalized.
CodewordCoeffs sign_codeword(const CodeParams &p, uint64_t seed);
/// Rescales so the represented vector has unit norm.
void normalize(CodewordCoeffs &c);

/// Two seeded codewords made orthonormal by Gram-Schmidt on the
/// coefficients. Orthonormal as vectors whenever f is balanced.
std::pair<CodewordCoeffs, CodewordCoeffs> orthonormal_codeword_pair(const CodeParams &p, uint64_t seed);

/// Two seeded Gaussian states made orthonormal by Gram-Schmidt.
std::pair<StateVector, StateVector> random_orthonormal_pair(int n, uint64_t seed);

/// Row-major square complex matrix.
struct ComplexMatrix {
    size_t dim = 0;
    std::vector<Amplitude> entries;

    explicit ComplexMatrix(size_t dim = 0) : dim(dim), entries(dim * dim) {
    }
    Amplitude &operator()(size_t r, size_t c) {
        return entries[r * dim + c];
    }
    const Amplitude &operator()(size_t r, size_t c) const {
        return entries[r * dim + c];
    }
};

/// Gram matrix (z, z') -> f_z^* f_{z'} by dense materialization.
ComplexMatrix gram(const BooleanFunctionTable &f, const CodeParams &p, int dense_cap = kDefaultDenseCap);

/// Same matrix from the block factorization: each pair contributes
/// 2^(2 n') / 4 when z_k = z'_k and (sum f)^2 otherwise. No size cap.
ComplexMatrix gram_structured(const BooleanFunctionTable &f, const CodeParams &p);

void check_dense_cap(int n, int dense_cap);

}  // namespace aqec

#endif
