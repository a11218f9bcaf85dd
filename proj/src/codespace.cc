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

#include <cmath>
#include <stdexcept>
#include <string>

#include "aqec/parallel.h"
#include "aqec/rng.h"

namespace aqec {

namespace {

constexpr uint64_t kChunk = uint64_t{1} << 14;

void require_width(const BooleanFunctionTable &f, const CodeParams &p) {
    if (f.width() != p.block_len) {
        throw std::invalid_argument("function width " + std::to_string(f.width()) + " != block length " +
                                    std::to_string(p.block_len));
    }
}

void require_coeffs(const CodewordCoeffs &c) {
    if (c.alpha.size() != c.params.dimension()) {
        throw std::invalid_argument("codeword has " + std::to_string(c.alpha.size()) + " coefficients, expected " +
                                    std::to_string(c.params.dimension()));
    }
}

// Contracts alpha against the per-pair factor vectors (a_k, b_k), highest
// pair first. `scratch` must hold 2^B entries.
Amplitude contract(std::span<const Amplitude> alpha, std::span<const double> side0, std::span<const double> side1,
                   std::vector<Amplitude> &scratch) {
    size_t len = alpha.size();
    std::copy(alpha.begin(), alpha.end(), scratch.begin());
    for (size_t k = side0.size(); k-- > 0;) {
        len /= 2;
        for (size_t r = 0; r < len; r++) {
            scratch[r] = scratch[r] * side0[k] + scratch[r + len] * side1[k];
        }
    }
    return scratch[0];
}

// Fills phi(x) for x in [begin, end).
void fill_codeword(const BooleanFunctionTable &f, const CodewordCoeffs &c, uint64_t begin, uint64_t end,
                   StateVector &out) {
    const CodeParams &p = c.params;
    std::vector<double> side0(p.pairs), side1(p.pairs);
    std::vector<Amplitude> scratch(c.alpha.size());
    for (uint64_t x = begin; x < end; x++) {
        for (int k = 0; k < p.pairs; k++) {
            side0[k] = f.value(block_bits(p, x, k, 0));
            side1[k] = f.value(block_bits(p, x, k, 1));
        }
        out[x] = contract(c.alpha, side0, side1, scratch);
    }
}

}  // namespace

CodeParams make_params(int n, int pairs) {
    if (n < 2 || pairs < 1) {
        throw std::invalid_argument("code needs n >= 2 and B >= 1");
    }
    if (n % (2 * pairs) != 0) {
        throw std::invalid_argument("2B = " + std::to_string(2 * pairs) + " does not divide n = " + std::to_string(n));
    }
    if (n > kMaxVariables) {
        throw std::invalid_argument("n exceeds " + std::to_string(kMaxVariables));
    }
    return CodeParams{n, pairs, n / (2 * pairs)};
}

BitString block_project(const CodeParams &p, const BitString &x, int pair, int side) {
    if (x.width != p.n) {
        throw std::invalid_argument("block_project: string width != n");
    }
    if (pair < 0 || pair >= p.pairs || (side != 0 && side != 1)) {
        throw std::out_of_range("block_project: block index out of range");
    }
    return BitString(block_bits(p, x.value, pair, side), p.block_len);
}

void check_dense_cap(int n, int dense_cap) {
    if (n > dense_cap) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the dense cap " +
                                    std::to_string(dense_cap));
    }
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw std::invalid_argument("StateVector supports 1..30 qubits");
    }
    amp_.assign(uint64_t{1} << num_qubits, Amplitude{});
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes) : n_(num_qubits), amp_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > 30 || amp_.size() != (uint64_t{1} << num_qubits)) {
        throw std::invalid_argument("StateVector length must be 2^n");
    }
}

StateVector StateVector::basis_state(int num_qubits, uint64_t x) {
    StateVector v(num_qubits);
    v[x] = 1;
    return v;
}

double StateVector::norm_squared() const {
    return tree_sum<double>(amp_.size(), [&](uint64_t x) { return std::norm(amp_[x]); });
}

StateVector &StateVector::operator*=(Amplitude c) {
    for (auto &a : amp_) {
        a *= c;
    }
    return *this;
}

StateVector &StateVector::operator+=(const StateVector &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("StateVector size mismatch");
    }
    for (uint64_t x = 0; x < amp_.size(); x++) {
        amp_[x] += other.amp_[x];
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    if (other.n_ != n_) {
        throw std::invalid_argument("StateVector size mismatch");
    }
    for (uint64_t x = 0; x < amp_.size(); x++) {
        amp_[x] -= other.amp_[x];
    }
    return *this;
}

StateVector operator*(Amplitude c, StateVector v) {
    v *= c;
    return v;
}

StateVector operator+(StateVector a, const StateVector &b) {
    a += b;
    return a;
}

StateVector operator-(StateVector a, const StateVector &b) {
    a -= b;
    return a;
}

Amplitude inner(const StateVector &left, const StateVector &right) {
    if (left.num_qubits() != right.num_qubits()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    return tree_sum<Amplitude>(left.size(), [&](uint64_t x) { return std::conj(left[x]) * right[x]; });
}

bool is_orthonormal(const StateVector &a, const StateVector &b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    return std::abs(inner(a, b)) <= tol && std::abs(a.norm_squared() - 1) <= tol &&
           std::abs(b.norm_squared() - 1) <= tol;
}

void require_orthonormal(const StateVector &a, const StateVector &b, double tol, const char *context) {
    if (!is_orthonormal(a, b, tol)) {
        throw std::invalid_argument(std::string(context) + ": inputs are not orthonormal within tolerance");
    }
}

double CodewordCoeffs::norm_squared() const {
    double s = 0;
    for (const auto &a : alpha) {
        s += std::norm(a);
    }
    return std::ldexp(s, params.basis_norm_exponent());
}

double fz_value(const BooleanFunctionTable &f, const CodeParams &p, uint64_t z, uint64_t x) {
    double v = 1;
    for (int k = 0; k < p.pairs; k++) {
        v *= f.value(block_bits(p, x, k, static_cast<int>((z >> k) & 1)));
    }
    return v;
}

Amplitude eval_fz(const BooleanFunctionTable &f, const CodeParams &p, const BitString &z, const BitString &x) {
    require_width(f, p);
    if (z.width != p.pairs || x.width != p.n) {
        throw std::invalid_argument("eval_fz: z must have width B and x width n");
    }
    return fz_value(f, p, z.value, x.value);
}

Amplitude eval_codeword(const BooleanFunctionTable &f, const CodewordCoeffs &c, uint64_t x) {
    require_width(f, c.params);
    require_coeffs(c);
    Amplitude acc = 0;
    for (uint64_t z = 0; z < c.alpha.size(); z++) {
        acc += c.alpha[z] * fz_value(f, c.params, z, x);
    }
    return acc;
}

StateVector materialize_basis(const BooleanFunctionTable &f, const CodeParams &p, uint64_t z, int dense_cap) {
    require_width(f, p);
    check_dense_cap(p.n, dense_cap);
    if (z >= p.dimension()) {
        throw std::out_of_range("materialize_basis: z out of range");
    }
    StateVector out(p.n);
    for (uint64_t x = 0; x < out.size(); x++) {
        out[x] = fz_value(f, p, z, x);
    }
    return out;
}

StateVector materialize_codeword(const BooleanFunctionTable &f, const CodewordCoeffs &c, int dense_cap) {
    require_width(f, c.params);
    require_coeffs(c);
    check_dense_cap(c.params.n, dense_cap);
    StateVector out(c.params.n);
    uint64_t chunks = (out.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](size_t k) {
        uint64_t begin = k * kChunk;
        fill_codeword(f, c, begin, std::min(out.size(), begin + kChunk), out);
    });
    return out;
}

void normalize(CodewordCoeffs &c) {
    double norm2 = c.norm_squared();
    if (!(norm2 > 0)) {
        throw std::invalid_argument("cannot normalize the null codeword");
    }
    double scale = 1 / std::sqrt(norm2);
    for (auto &a : c.alpha) {
        a *= scale;
    }
}

std::pair<CodewordCoeffs, CodewordCoeffs> orthonormal_codeword_pair(const CodeParams &p, uint64_t seed) {
    CodewordCoeffs a = sample_codeword(p, derive_seed(seed, "pair", 0));
    CodewordCoeffs b = sample_codeword(p, derive_seed(seed, "pair", 1));
    Amplitude overlap = 0;
    for (size_t z = 0; z < a.alpha.size(); z++) {
        overlap += std::conj(a.alpha[z]) * b.alpha[z];
    }
    double scale = std::ldexp(1.0, p.basis_norm_exponent());
    for (size_t z = 0; z < a.alpha.size(); z++) {
        b.alpha[z] -= overlap * scale * a.alpha[z];
    }
    normalize(b);
    return {std::move(a), std::move(b)};
}

std::pair<StateVector, StateVector> random_orthonormal_pair(int n, uint64_t seed) {
    Rng rng(seed);
    StateVector a(n);
    StateVector b(n);
    for (uint64_t x = 0; x < a.size(); x++) {
        a[x] = rng.complex_normal();
    }
    for (uint64_t x = 0; x < b.size(); x++) {
        b[x] = rng.complex_normal();
    }
    a *= 1 / std::sqrt(a.norm_squared());
    b -= inner(a, b) * a;
    b *= 1 / std::sqrt(b.norm_squared());
    return {std::move(a), std::move(b)};
}

CodewordCoeffs sample_codeword(const CodeParams &p, uint64_t seed) {
    Rng rng(seed);
    CodewordCoeffs c{p, std::vector<Amplitude>(p.dimension())};
    for (auto &a : c.alpha) {
        a = rng.complex_normal();
    }
    normalize(c);
    return c;
}

CodewordCoeffs basis_codeword(const CodeParams &p, uint64_t z) {
    if (z >= p.dimension()) {
        throw std::out_of_range("basis_codeword: z out of range");
    }
    CodewordCoeffs c{p, std::vector<Amplitude>(p.dimension())};
    c.alpha[z] = 1;
    normalize(c);
    return c;
}

CodewordCoeffs uniform_codeword(const CodeParams &p) {
    CodewordCoeffs c{p, std::vector<Amplitude>(p.dimension(), Amplitude{1})};
    normalize(c);
    return c;
}

CodewordCoeffs sign_codeword(const CodeParams &p, uint64_t seed) {
    Rng rng(seed);
    CodewordCoeffs c{p, std::vector<Amplitude>(p.dimension())};
    for (auto &a : c.alpha) {
        a = (rng.next() >> 63) ? -1.0 : 1.0;
    }
    normalize(c);
    return c;
}

ComplexMatrix gram(const BooleanFunctionTable &f, const CodeParams &p, int dense_cap) {
    require_width(f, p);
    check_dense_cap(p.n, dense_cap);
    uint64_t dim = p.dimension();
    std::vector<StateVector> basis;
    basis.reserve(dim);
    for (uint64_t z = 0; z < dim; z++) {
        basis.push_back(materialize_basis(f, p, z, dense_cap));
    }
    ComplexMatrix g(dim);
    for (uint64_t r = 0; r < dim; r++) {
        for (uint64_t c = 0; c < dim; c++) {
            g(r, c) = inner(basis[r], basis[c]);
        }
    }
    return g;
}

ComplexMatrix gram_structured(const BooleanFunctionTable &f, const CodeParams &p) {
    require_width(f, p);
    // Per pair: sum over both blocks of f(x_{k,c}) f(x_{k,c'}).
    double same = std::ldexp(0.25, 2 * p.block_len);
    double sum_f = f.total();
    double differ = sum_f * sum_f;
    uint64_t dim = p.dimension();
    ComplexMatrix g(dim);
    for (uint64_t r = 0; r < dim; r++) {
        for (uint64_t c = 0; c < dim; c++) {
            double v = 1;
            for (int k = 0; k < p.pairs; k++) {
                v *= (((r ^ c) >> k) & 1) ? differ : same;
            }
            g(r, c) = v;
        }
    }
    return g;
}

}  // namespace aqec
