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

#include "retroking/mub.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "retroking/rng.h"

namespace retroking {

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

}  // namespace

Complex cube_root_of_unity() {
    return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
}

Matrix qutrit_transform(size_t m) {
    const Complex x = cube_root_of_unity();
    const Complex x2 = x * x;
    Matrix t(3, 3);
    switch (m) {
        case 0:
            return Matrix::identity(3);
        case 1:
        case 2: {
            Complex diag = m == 1 ? x : x2;
            for (size_t r = 0; r < 3; r++) {
                for (size_t c = 0; c < 3; c++) {
                    t(r, c) = (r == c ? diag : Complex{1, 0}) * kInvSqrt3;
                }
            }
            return t;
        }
        case 3:
            for (size_t r = 0; r < 3; r++) {
                for (size_t c = 0; c < 3; c++) {
                    switch ((r * c) % 3) {
                        case 0:
                            t(r, c) = kInvSqrt3;
                            break;
                        case 1:
                            t(r, c) = x * kInvSqrt3;
                            break;
                        default:
                            t(r, c) = x2 * kInvSqrt3;
                            break;
                    }
                }
            }
            return t;
        default:
            throw ContractViolation("qutrit_transform: basis index must be 0..3");
    }
}

MubSet build_qutrit_mubs() {
    MubSet set;
    set.dim = 3;
    for (size_t m = 0; m < 4; m++) {
        Matrix t = qutrit_transform(m);
        set.bases.push_back(OrthonormalBasis::from_columns(3, t.entries()));
    }
    return set;
}

MubSet build_qubit_mubs() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0, 1};
    MubSet set;
    set.dim = 2;
    set.bases.push_back(OrthonormalBasis::standard(2));
    set.bases.push_back(OrthonormalBasis({StateVector{s, s}, StateVector{s, -s}}));
    set.bases.push_back(OrthonormalBasis({StateVector{s, i * s}, StateVector{s, -i * s}}));
    return set;
}

UnbiasednessReport certify_unbiasedness(const MubSet &set) {
    UnbiasednessReport report;
    const double cross = 1.0 / static_cast<double>(set.dim);
    for (size_t m = 0; m < set.bases.size(); m++) {
        for (size_t m2 = 0; m2 < set.bases.size(); m2++) {
            for (size_t k = 0; k < set.dim; k++) {
                for (size_t k2 = 0; k2 < set.dim; k2++) {
                    double p = std::norm(inner_product(set.ket(m, k), set.ket(m2, k2)));
                    if (m == m2) {
                        double expected = k == k2 ? 1.0 : 0.0;
                        report.max_same_basis_deviation =
                            std::max(report.max_same_basis_deviation, std::abs(p - expected));
                    } else {
                        report.max_cross_basis_deviation =
                            std::max(report.max_cross_basis_deviation, std::abs(p - cross));
                    }
                }
            }
        }
    }
    report.pass = report.max_same_basis_deviation < kTol && report.max_cross_basis_deviation < kTol;
    return report;
}

std::array<double, 3> hermitian_eigenvalues_3x3(const Matrix &a) {
    if (a.rows() != 3 || a.cols() != 3) {
        throw ContractViolation("hermitian_eigenvalues_3x3: expected a 3x3 matrix");
    }
    // Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]],
    // whose spectrum is that of `a` with every eigenvalue doubled. Closed-form
    // cubic roots lose about sqrt(eps) on (near-)degenerate spectra such as
    // pure states, which is too coarse for a kTol positivity test.
    constexpr size_t n = 6;
    std::array<std::array<double, n>, n> s{};
    for (size_t r = 0; r < 3; r++) {
        for (size_t c = 0; c < 3; c++) {
            Complex h = 0.5 * (a(r, c) + std::conj(a(c, r)));
            s[r][c] = h.real();
            s[r + 3][c + 3] = h.real();
            s[r][c + 3] = -h.imag();
            s[r + 3][c] = h.imag();
        }
    }
    for (int sweep = 0; sweep < 50; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += s[p][q] * s[p][q];
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                if (s[p][q] == 0) {
                    continue;
                }
                double theta = (s[q][q] - s[p][p]) / (2 * s[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double sn = t * c;
                for (size_t k = 0; k < n; k++) {
                    double skp = s[k][p];
                    double skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (size_t k = 0; k < n; k++) {
                    double spk = s[p][k];
                    double sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
        }
    }
    std::array<double, n> diag{};
    for (size_t i = 0; i < n; i++) {
        diag[i] = s[i][i];
    }
    std::sort(diag.begin(), diag.end());
    return {0.5 * (diag[0] + diag[1]), 0.5 * (diag[2] + diag[3]), 0.5 * (diag[4] + diag[5])};
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != 3 || entries_.cols() != 3) {
        throw ContractViolation("DensityMatrix: expected a 3x3 matrix");
    }
    for (const auto &e : entries_.entries()) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw ContractViolation("DensityMatrix: non-finite entry");
        }
    }
    if (max_abs_difference(entries_, entries_.adjoint()) > kTol) {
        throw ContractViolation("DensityMatrix: not Hermitian");
    }
    if (std::abs(entries_.trace() - Complex{1, 0}) > kTol) {
        throw ContractViolation("DensityMatrix: trace is not 1");
    }
    if (eigenvalues()[0] < -kTol) {
        throw ContractViolation("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Complex{1.0 / 3.0, 0} * Matrix::identity(3));
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    if (state.dim() != 3) {
        throw ContractViolation("DensityMatrix::pure: expected a qutrit state");
    }
    StateVector v = state.normalized();
    return DensityMatrix(Matrix::outer(v, v));
}

DensityMatrix DensityMatrix::random(Rng &rng) {
    Matrix g(3, 3);
    for (size_t r = 0; r < 3; r++) {
        for (size_t c = 0; c < 3; c++) {
            double re = rng.gaussian();
            double im = rng.gaussian();
            g(r, c) = Complex{re, im};
        }
    }
    Matrix ggd = g * g.adjoint();
    double tr = ggd.trace().real();
    Matrix rho = Complex{1.0 / tr, 0} * ggd;
    // Remove the rounding-level anti-Hermitian part.
    Matrix sym = Complex{0.5, 0} * (rho + rho.adjoint());
    return DensityMatrix(std::move(sym));
}

std::array<double, 3> DensityMatrix::eigenvalues() const {
    return hermitian_eigenvalues_3x3(entries_);
}

ProbabilityTable::ProbabilityTable(const Rows &values) : values_(values) {
    for (size_t m = 0; m < 4; m++) {
        double total = 0;
        for (size_t k = 0; k < 3; k++) {
            double p = values_[m][k];
            if (!std::isfinite(p) || p < -kTol || p > 1 + kTol) {
                throw ContractViolation("ProbabilityTable: entry outside [0, 1]");
            }
            total += p;
        }
        if (std::abs(total - 1) > kTol) {
            throw ContractViolation("ProbabilityTable: row " + std::to_string(m) + " does not sum to 1");
        }
    }
}

ProbabilityTable probabilities_from_density(const DensityMatrix &rho, const MubSet &set) {
    if (set.dim != 3 || set.bases.size() != 4) {
        throw ContractViolation("probabilities_from_density: expected the qutrit set");
    }
    ProbabilityTable::Rows rows{};
    for (size_t m = 0; m < 4; m++) {
        for (size_t k = 0; k < 3; k++) {
            Complex p = rho.matrix().sandwich(set.ket(m, k), set.ket(m, k));
            if (std::abs(p.imag()) > kTol) {
                throw ContractViolation("probabilities_from_density: complex expectation value");
            }
            rows[m][k] = p.real();
        }
    }
    return ProbabilityTable(rows);
}

DensityMatrix density_from_probabilities(const ProbabilityTable &table, const MubSet &set) {
    if (set.dim != 3 || set.bases.size() != 4) {
        throw ContractViolation("density_from_probabilities: expected the qutrit set");
    }
    Matrix rho(3, 3);
    for (size_t m = 0; m < 4; m++) {
        for (size_t k = 0; k < 3; k++) {
            const StateVector &v = set.ket(m, k);
            rho += Complex{table(m, k) - 0.25, 0} * Matrix::outer(v, v);
        }
    }
    return DensityMatrix(std::move(rho));
}

size_t tomography_map_rank(const MubSet &set) {
    if (set.dim != 3 || set.bases.size() != 4) {
        throw ContractViolation("tomography_map_rank: expected the qutrit set");
    }
    // Real basis of Hermitian 3x3 matrices: E_ii, E_ij + E_ji, i(E_ij - E_ji).
    std::vector<Matrix> hermitian_basis;
    for (size_t i = 0; i < 3; i++) {
        Matrix e(3, 3);
        e(i, i) = 1;
        hermitian_basis.push_back(e);
    }
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = i + 1; j < 3; j++) {
            Matrix sym(3, 3);
            sym(i, j) = 1;
            sym(j, i) = 1;
            hermitian_basis.push_back(sym);
            Matrix anti(3, 3);
            anti(i, j) = Complex{0, 1};
            anti(j, i) = Complex{0, -1};
            hermitian_basis.push_back(anti);
        }
    }

    const size_t rows = 12;
    const size_t cols = hermitian_basis.size();
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
    for (size_t m = 0; m < 4; m++) {
        for (size_t k = 0; k < 3; k++) {
            for (size_t c = 0; c < cols; c++) {
                a[3 * m + k][c] = hermitian_basis[c].sandwich(set.ket(m, k), set.ket(m, k)).real();
            }
        }
    }

    // Gaussian elimination with partial pivoting.
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; c++) {
        size_t pivot = rank;
        for (size_t r = rank + 1; r < rows; r++) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot][c]) < 1e-9) {
            continue;
        }
        std::swap(a[pivot], a[rank]);
        for (size_t r = rank + 1; r < rows; r++) {
            double f = a[r][c] / a[rank][c];
            for (size_t c2 = c; c2 < cols; c2++) {
                a[r][c2] -= f * a[rank][c2];
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace retroking
