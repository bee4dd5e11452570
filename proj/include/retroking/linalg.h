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

#ifndef RETROKING_LINALG_H
#define RETROKING_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace retroking {

class Rng;

using Complex = std::complex<double>;

/// Tolerance for every equality, orthonormality and normalization check.
inline constexpr double kTol = 1e-10;

/// Raised when a caller breaks an operation's precondition (dimension
/// mismatch, malformed distribution, non-physical density matrix, ...).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a projective measurement is asked to produce an outcome
/// whose probability is (numerically) zero.
struct ImpossibleOutcome : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex coefficient vector over a fixed ordered basis.
///
/// Two-atom states have dimension 9 and store the amplitude of |i>|j> at
/// index 3*i + j, the given atom being the left factor.
class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amps);
    StateVector(std::initializer_list<Complex> amps);

    /// Unit vector e_index in the given dimension.
    static StateVector basis_state(size_t dim, size_t index);
    static StateVector zero(size_t dim);

    size_t dim() const {
        return amps_.size();
    }
    const Complex &operator[](size_t i) const {
        return amps_[i];
    }
    Complex &operator[](size_t i) {
        return amps_[i];
    }
    std::span<const Complex> amplitudes() const {
        return amps_;
    }

    double norm_squared() const;
    double norm() const;
    StateVector normalized() const;

    StateVector &operator+=(const StateVector &other);
    StateVector &operator-=(const StateVector &other);
    StateVector &operator*=(Complex scale);

    friend StateVector operator+(StateVector a, const StateVector &b) {
        return a += b;
    }
    friend StateVector operator-(StateVector a, const StateVector &b) {
        return a -= b;
    }
    friend StateVector operator*(Complex scale, StateVector v) {
        return v *= scale;
    }
    friend StateVector operator*(StateVector v, Complex scale) {
        return v *= scale;
    }

   private:
    std::vector<Complex> amps_;
};

/// Ordered set of state vectors that are supposed to be orthonormal.
///
/// Construction only checks that the vectors share the basis dimension and
/// that there are `dim` of them; orthonormality is certified separately with
/// max_gram_deviation so that deliberately broken bases can be represented.
class OrthonormalBasis {
   public:
    OrthonormalBasis() = default;
    explicit OrthonormalBasis(std::vector<StateVector> vectors);

    /// Basis whose k-th vector is column k of `columns`, a row-major dim x dim
    /// matrix of coefficients in the standard basis.
    static OrthonormalBasis from_columns(size_t dim, std::span<const Complex> columns);
    static OrthonormalBasis standard(size_t dim);

    size_t dim() const {
        return vectors_.size();
    }
    const StateVector &operator[](size_t k) const {
        return vectors_[k];
    }
    StateVector &operator[](size_t k) {
        return vectors_[k];
    }
    const std::vector<StateVector> &vectors() const {
        return vectors_;
    }

   private:
    std::vector<StateVector> vectors_;
};

/// Small dense complex matrix, row major.
class Matrix {
   public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols);
    Matrix(size_t rows, size_t cols, std::vector<Complex> entries);

    static Matrix identity(size_t n);
    /// |v><v|
    static Matrix outer(const StateVector &ket, const StateVector &bra);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    Complex &operator()(size_t r, size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(size_t r, size_t c) const {
        return entries_[r * cols_ + c];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    Matrix adjoint() const;
    Complex trace() const;
    StateVector apply(const StateVector &v) const;
    /// <bra| M |ket>
    Complex sandwich(const StateVector &bra, const StateVector &ket) const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator*=(Complex scale);
    friend Matrix operator+(Matrix a, const Matrix &b) {
        return a += b;
    }
    friend Matrix operator*(Complex scale, Matrix m) {
        return m *= scale;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b);

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// max_{r,c} |a(r,c) - b(r,c)|
double max_abs_difference(const Matrix &a, const Matrix &b);

/// <a|b>, conjugating a.
Complex inner_product(const StateVector &a, const StateVector &b);

/// a (x) b for two qutrit states.
StateVector tensor_product(const StateVector &a, const StateVector &b);

enum class AtomSlot { Given, Auxiliary };

/// Applies |v><v| to the chosen atom of a two-atom state (identity on the
/// other atom) and renormalizes. Throws ImpossibleOutcome when the projected
/// vector has norm below kTol.
StateVector project_and_normalize(const StateVector &state, const StateVector &subspace_vector, AtomSlot slot);

/// |<basis_j|state>|^2 for each j.
std::vector<double> born_probabilities(const StateVector &state, const OrthonormalBasis &basis);

/// Draws an index from `probs`. Entries below kTol are treated as exactly
/// zero and the rest renormalized before sampling.
size_t sample_outcome(std::span<const double> probs, Rng &rng);

/// |<a|b>| >= 1 - kTol
bool equal_up_to_global_phase(const StateVector &a, const StateVector &b);

/// max_{j,k} |<v_j|v_k> - delta_jk|
double max_gram_deviation(const OrthonormalBasis &basis);

/// Formats a complex number as `a+bi` with 6 significant digits.
std::string format_complex(Complex z);

}  // namespace retroking

#endif
