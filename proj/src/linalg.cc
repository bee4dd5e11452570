// Copyright 2026 The retroking Authors
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

#include "retroking/linalg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "retroking/rng.h"

namespace retroking {

namespace {

void require_same_dim(size_t a, size_t b, const char *op) {
    if (a != b) {
        throw ContractViolation(
            std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ContractViolation("StateVector: non-finite amplitude");
        }
    }
}

StateVector::StateVector(std::initializer_list<Complex> amps) : StateVector(std::vector<Complex>(amps)) {
}

StateVector StateVector::basis_state(size_t dim, size_t index) {
    if (index >= dim) {
        throw ContractViolation("basis_state: index out of range");
    }
    StateVector v = zero(dim);
    v.amps_[index] = 1.0;
    return v;
}

StateVector StateVector::zero(size_t dim) {
    return StateVector(std::vector<Complex>(dim, Complex{0, 0}));
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

double StateVector::norm() const {
    return std::sqrt(norm_squared());
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n < kTol) {
        throw ContractViolation("normalized: zero vector");
    }
    return *this * Complex{1.0 / n, 0};
}

StateVector &StateVector::operator+=(const StateVector &other) {
    require_same_dim(dim(), other.dim(), "operator+=");
    for (size_t i = 0; i < amps_.size(); i++) {
        amps_[i] += other.amps_[i];
    }
    return *this;
}

StateVector &StateVector::operator-=(const StateVector &other) {
    require_same_dim(dim(), other.dim(), "operator-=");
    for (size_t i = 0; i < amps_.size(); i++) {
        amps_[i] -= other.amps_[i];
    }
    return *this;
}

StateVector &StateVector::operator*=(Complex scale) {
    for (auto &a : amps_) {
        a *= scale;
    }
    return *this;
}

OrthonormalBasis::OrthonormalBasis(std::vector<StateVector> vectors) : vectors_(std::move(vectors)) {
    for (const auto &v : vectors_) {
        if (v.dim() != vectors_.size()) {
            throw ContractViolation("OrthonormalBasis: need exactly dim vectors of dimension dim");
        }
    }
}

OrthonormalBasis OrthonormalBasis::from_columns(size_t dim, std::span<const Complex> columns) {
    if (columns.size() != dim * dim) {
        throw ContractViolation("OrthonormalBasis::from_columns: expected a square matrix");
    }
    std::vector<StateVector> vectors;
    vectors.reserve(dim);
    for (size_t c = 0; c < dim; c++) {
        std::vector<Complex> amps(dim);
        for (size_t r = 0; r < dim; r++) {
            amps[r] = columns[r * dim + c];
        }
        vectors.emplace_back(std::move(amps));
    }
    return OrthonormalBasis(std::move(vectors));
}

OrthonormalBasis OrthonormalBasis::standard(size_t dim) {
    std::vector<StateVector> vectors;
    for (size_t k = 0; k < dim; k++) {
        vectors.push_back(StateVector::basis_state(dim, k));
    }
    return OrthonormalBasis(std::move(vectors));
}

Matrix::Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

Matrix::Matrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw ContractViolation("Matrix: entry count does not match shape");
    }
}

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::outer(const StateVector &ket, const StateVector &bra) {
    Matrix m(ket.dim(), bra.dim());
    for (size_t r = 0; r < ket.dim(); r++) {
        for (size_t c = 0; c < bra.dim(); c++) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

Complex Matrix::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); i++) {
        t += (*this)(i, i);
    }
    return t;
}

StateVector Matrix::apply(const StateVector &v) const {
    require_same_dim(cols_, v.dim(), "Matrix::apply");
    std::vector<Complex> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out[r] += (*this)(r, c) * v[c];
        }
    }
    return StateVector(std::move(out));
}

Complex Matrix::sandwich(const StateVector &bra, const StateVector &ket) const {
    return inner_product(bra, apply(ket));
}

Matrix &Matrix::operator+=(const Matrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ContractViolation("Matrix::operator+=: shape mismatch");
    }
    for (size_t i = 0; i < entries_.size(); i++) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

Matrix &Matrix::operator*=(Complex scale) {
    for (auto &e : entries_) {
        e *= scale;
    }
    return *this;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
    require_same_dim(a.cols(), b.rows(), "Matrix product");
    Matrix out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            for (size_t c = 0; c < b.cols(); c++) {
                out(r, c) += a(r, k) * b(k, c);
            }
        }
    }
    return out;
}

double max_abs_difference(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractViolation("max_abs_difference: shape mismatch");
    }
    double worst = 0;
    for (size_t i = 0; i < a.entries().size(); i++) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    Complex total = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != 3 || b.dim() != 3) {
        throw ContractViolation("tensor_product: both factors must be qutrit states");
    }
    std::vector<Complex> amps(9);
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            amps[3 * i + j] = a[i] * b[j];
        }
    }
    return StateVector(std::move(amps));
}

StateVector project_and_normalize(const StateVector &state, const StateVector &subspace_vector, AtomSlot slot) {
    if (state.dim() != 9 || subspace_vector.dim() != 3) {
        throw ContractViolation("project_and_normalize: expected a two-atom state and a qutrit vector");
    }
    double vn = subspace_vector.norm_squared();
    if (std::abs(vn - 1) > kTol) {
        throw ContractViolation("project_and_normalize: projector vector is not normalized");
    }
    // Contract the chosen slot with <v| to get the other atom's conditional
    // (unnormalized) state, then re-tensor with |v>.
    StateVector other = StateVector::zero(3);
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            if (slot == AtomSlot::Given) {
                other[j] += std::conj(subspace_vector[i]) * state[3 * i + j];
            } else {
                other[i] += std::conj(subspace_vector[j]) * state[3 * i + j];
            }
        }
    }
    double n = other.norm();
    if (n < kTol) {
        throw ImpossibleOutcome("project_and_normalize: outcome has zero probability");
    }
    other *= Complex{1.0 / n, 0};
    return slot == AtomSlot::Given ? tensor_product(subspace_vector, other) : tensor_product(other, subspace_vector);
}

std::vector<double> born_probabilities(const StateVector &state, const OrthonormalBasis &basis) {
    require_same_dim(state.dim(), basis.dim(), "born_probabilities");
    std::vector<double> probs;
    probs.reserve(basis.dim());
    for (const auto &v : basis.vectors()) {
        probs.push_back(std::norm(inner_product(v, state)));
    }
    return probs;
}

size_t sample_outcome(std::span<const double> probs, Rng &rng) {
    if (probs.empty()) {
        throw ContractViolation("sample_outcome: empty distribution");
    }
    double total = 0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < -kTol) {
            throw ContractViolation("sample_outcome: negative or non-finite probability");
        }
        total += p;
    }
    if (std::abs(total - 1) > kTol) {
        throw ContractViolation("sample_outcome: probabilities do not sum to 1");
    }

    double kept = 0;
    size_t last_possible = 0;
    for (size_t j = 0; j < probs.size(); j++) {
        if (probs[j] >= kTol) {
            kept += probs[j];
            last_possible = j;
        }
    }
    double target = rng.uniform() * kept;
    double acc = 0;
    for (size_t j = 0; j < probs.size(); j++) {
        if (probs[j] < kTol) {
            continue;
        }
        acc += probs[j];
        if (target < acc) {
            return j;
        }
    }
    return last_possible;
}

bool equal_up_to_global_phase(const StateVector &a, const StateVector &b) {
    return std::abs(inner_product(a, b)) >= 1 - kTol;
}

double max_gram_deviation(const OrthonormalBasis &basis) {
    double worst = 0;
    for (size_t j = 0; j < basis.dim(); j++) {
        for (size_t k = 0; k < basis.dim(); k++) {
            Complex expected = j == k ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(inner_product(basis[j], basis[k]) - expected));
        }
    }
    return worst;
}

std::string format_complex(Complex z) {
    // Collapse signed zeros and rounding dust so that tables print cleanly.
    auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
    double re = clean(z.real());
    double im = clean(z.imag());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", re, im);
    return buf;
}

}  // namespace retroking
