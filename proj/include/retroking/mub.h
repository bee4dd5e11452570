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

#ifndef RETROKING_MUB_H
#define RETROKING_MUB_H

#include <array>
#include <vector>

#include "retroking/linalg.h"

namespace retroking {

class Rng;

/// x = exp(2 pi i / 3).
Complex cube_root_of_unity();

/// A complete set of mutually unbiased bases: dim + 1 bases of dimension
/// dim. bases[m][k] is the eigenstate |m_k> of the m-th observable to the
/// eigenvalue k; bases[0] is the standard basis.
struct MubSet {
    size_t dim = 0;
    std::vector<OrthonormalBasis> bases;

    const StateVector &ket(size_t m, size_t k) const {
        return bases[m][k];
    }
};

/// Four mutually complementary qutrit eigenbases A_0..A_3. The coefficient
/// matrices of A_1, A_2, A_3 relative to A_0 are
///
///   (J + (x - 1) I) / sqrt3,  (J + (x^2 - 1) I) / sqrt3,  F
///
/// with J the all-ones matrix and F the 3x3 Fourier matrix F_rc = x^(rc)/sqrt3.
MubSet build_qutrit_mubs();

/// Spin-1/2 eigenbases in the order sigma_z, sigma_x, sigma_y. Index 0 of
/// each basis is the +1 eigenstate.
MubSet build_qubit_mubs();

/// The coefficient matrix of basis m relative to basis 0 (columns are kets).
Matrix qutrit_transform(size_t m);

struct UnbiasednessReport {
    bool pass = false;
    /// max |<m_k|m_k'>|^2 - delta_kk'| within one basis.
    double max_same_basis_deviation = 0;
    /// max ||<m_k|m'_k'>|^2 - 1/dim| across different bases.
    double max_cross_basis_deviation = 0;
};

UnbiasednessReport certify_unbiasedness(const MubSet &set);

/// Hermitian, unit-trace, positive semidefinite 3x3 operator. Validated on
/// construction (throws ContractViolation).
class DensityMatrix {
   public:
    explicit DensityMatrix(Matrix entries);

    static DensityMatrix maximally_mixed();
    static DensityMatrix pure(const StateVector &state);
    /// rho = G G^dagger / tr(G G^dagger) with G a matrix of independent
    /// standard complex Gaussians.
    static DensityMatrix random(Rng &rng);

    const Matrix &matrix() const {
        return entries_;
    }
    Complex operator()(size_t r, size_t c) const {
        return entries_(r, c);
    }

    /// Ascending eigenvalues.
    std::array<double, 3> eigenvalues() const;

   private:
    Matrix entries_;
};

/// Eigenvalues of a Hermitian 3x3 matrix, ascending.
std::array<double, 3> hermitian_eigenvalues_3x3(const Matrix &m);

/// p[m][k] = probability of finding |m_k> when measuring A_m.
class ProbabilityTable {
   public:
    using Rows = std::array<std::array<double, 3>, 4>;

    /// Throws ContractViolation unless every entry is in [0, 1] (within
    /// kTol) and every row sums to 1 within kTol.
    explicit ProbabilityTable(const Rows &values);

    double operator()(size_t m, size_t k) const {
        return values_[m][k];
    }
    const Rows &rows() const {
        return values_;
    }

   private:
    Rows values_;
};

ProbabilityTable probabilities_from_density(const DensityMatrix &rho, const MubSet &set);

/// rho = sum_{m,k} |m_k> (p[m][k] - 1/4) <m_k|. Throws ContractViolation if
/// the table does not correspond to a positive operator.
DensityMatrix density_from_probabilities(const ProbabilityTable &table, const MubSet &set);

/// Rank of the real-linear map rho -> (p[m][k]) restricted to Hermitian
/// 3x3 matrices (9 real parameters). Complete tomography gives rank 9.
size_t tomography_map_rank(const MubSet &set);

}  // namespace retroking

#endif
