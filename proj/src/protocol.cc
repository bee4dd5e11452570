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

#include "retroking/protocol.h"

#include <algorithm>
#include <cmath>

#include "retroking/rng.h"

namespace retroking {

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

void require_basis_index(size_t m) {
    if (m >= kNumKingBases) {
        throw ContractViolation("king basis index must be 0..3, got " + std::to_string(m));
    }
}

void require_outcome(size_t k) {
    if (k >= kNumOutcomes) {
        throw ContractViolation("outcome must be 0..2, got " + std::to_string(k));
    }
}

Complex x_power(int exponent) {
    static const std::array<Complex, 3> powers = [] {
        Complex x = cube_root_of_unity();
        return std::array<Complex, 3>{Complex{1, 0}, x, x * x};
    }();
    return powers[((exponent % 3) + 3) % 3];
}

/// Probability of each outcome k when A_m is measured on the given atom.
std::vector<double> given_atom_probabilities(const StateVector &state, const MubSet &mubs, size_t m) {
    std::vector<double> probs(kNumOutcomes);
    for (size_t k = 0; k < kNumOutcomes; k++) {
        const StateVector &v = mubs.ket(m, k);
        double p = 0;
        for (size_t j = 0; j < 3; j++) {
            Complex amp = 0;
            for (size_t i = 0; i < 3; i++) {
                amp += std::conj(v[i]) * state[3 * i + j];
            }
            p += std::norm(amp);
        }
        probs[k] = p;
    }
    return probs;
}

}  // namespace

BracketLabel::BracketLabel(int k0, int k1, int k2, int k3) {
    std::array<int, 4> raw{k0, k1, k2, k3};
    for (size_t m = 0; m < 4; m++) {
        if (raw[m] < 0 || raw[m] > 2) {
            throw ContractViolation("BracketLabel entries must be 0, 1 or 2");
        }
        digits_[m] = static_cast<uint8_t>(raw[m]);
    }
}

BracketLabel BracketLabel::from_index(size_t index) {
    if (index >= kNumLabels) {
        throw ContractViolation("BracketLabel index must be below 81");
    }
    return BracketLabel(
        static_cast<int>(index / 27), static_cast<int>(index / 9 % 3), static_cast<int>(index / 3 % 3),
        static_cast<int>(index % 3));
}

size_t BracketLabel::index() const {
    return ((digits_[0] * 3u + digits_[1]) * 3u + digits_[2]) * 3u + digits_[3];
}

std::string BracketLabel::str() const {
    std::string s = "[";
    for (auto d : digits_) {
        s += static_cast<char>('0' + d);
    }
    return s + "]";
}

size_t agreements(const BracketLabel &a, const BracketLabel &b) {
    size_t n = 0;
    for (size_t m = 0; m < 4; m++) {
        n += a.digits_[m] == b.digits_[m];
    }
    return n;
}

const LabelSet &standard_physicist_labels() {
    static const LabelSet labels{
        BracketLabel(0, 0, 0, 0), BracketLabel(0, 1, 1, 1), BracketLabel(0, 2, 2, 2),
        BracketLabel(1, 0, 1, 2), BracketLabel(1, 1, 2, 0), BracketLabel(1, 2, 0, 1),
        BracketLabel(2, 0, 2, 1), BracketLabel(2, 1, 0, 2), BracketLabel(2, 2, 1, 0),
    };
    return labels;
}

size_t partner_basis(size_t m) {
    require_basis_index(m);
    static constexpr std::array<size_t, 4> partner{0, 2, 1, 3};
    return partner[m];
}

size_t partner_outcome(size_t m, size_t k) {
    require_basis_index(m);
    require_outcome(k);
    return m == 3 ? (3 - k) % 3 : k;
}

EntangledState prepare_psi0() {
    StateVector s = StateVector::zero(kTwoAtomDim);
    for (size_t i = 0; i < 3; i++) {
        s[3 * i + i] = kInvSqrt3;
    }
    return EntangledState{std::move(s)};
}

TrioTable::TrioTable(const MubSet &mubs) {
    if (mubs.dim != 3 || mubs.bases.size() != kNumKingBases) {
        throw ContractViolation("TrioTable: expected the qutrit set");
    }
    for (size_t m = 0; m < kNumKingBases; m++) {
        for (size_t k = 0; k < kNumOutcomes; k++) {
            states_[m][k] = tensor_product(mubs.ket(m, k), mubs.ket(partner_basis(m), partner_outcome(m, k)));
        }
    }
}

std::array<StateVector, kNumKingBases> psi0_forms(const TrioTable &trios) {
    std::array<StateVector, kNumKingBases> forms;
    for (size_t m = 0; m < kNumKingBases; m++) {
        StateVector sum = StateVector::zero(kTwoAtomDim);
        for (size_t k = 0; k < kNumOutcomes; k++) {
            sum += trios.at(m, k);
        }
        forms[m] = kInvSqrt3 * sum;
    }
    return forms;
}

Matrix transfer_matrix() {
    return qutrit_transform(3);
}

PsiBasis build_psi_basis(const EntangledState &psi0, const TrioTable &trios) {
    const Matrix u_dag = transfer_matrix().adjoint();
    std::vector<StateVector> psi(kTwoAtomDim, StateVector::zero(kTwoAtomDim));
    psi[0] = psi0.state;
    PsiBasis out;
    for (size_t m = 0; m < kNumKingBases; m++) {
        // (c_0, c_1, c_2) = (trio(m,0), trio(m,1), trio(m,2)) U^dagger
        std::array<StateVector, 3> columns;
        for (size_t r = 0; r < 3; r++) {
            StateVector c = StateVector::zero(kTwoAtomDim);
            for (size_t k = 0; k < kNumOutcomes; k++) {
                c += u_dag(k, r) * trios.at(m, k);
            }
            columns[r] = std::move(c);
        }
        out.reconstructed_psi0[m] = columns[0];
        psi[2 * m + 1] = columns[1];
        psi[2 * m + 2] = columns[2];
    }
    out.psi = OrthonormalBasis(std::move(psi));
    return out;
}

StateVector bracket_state(const BracketLabel &label, const PsiBasis &basis) {
    StateVector s = basis.psi[0];
    for (size_t m = 0; m < kNumKingBases; m++) {
        int k = label[m];
        s += x_power(k) * basis.psi[2 * m + 1];
        s += x_power(-k) * basis.psi[2 * m + 2];
    }
    return Complex{1.0 / 3.0, 0} * s;
}

double bracket_overlap(const BracketLabel &a, const BracketLabel &b) {
    return (static_cast<double>(agreements(a, b)) - 1.0) / 3.0;
}

PhysicistBasis physicist_basis_from_labels(const LabelSet &labels, const PsiBasis &basis) {
    PhysicistBasis out;
    std::vector<StateVector> states;
    for (const auto &label : labels) {
        states.push_back(bracket_state(label, basis));
        out.labels.push_back(label);
    }
    out.states = OrthonormalBasis(std::move(states));
    return out;
}

PhysicistBasis build_physicist_basis(const PsiBasis &basis) {
    return physicist_basis_from_labels(standard_physicist_labels(), basis);
}

size_t infer(size_t m, size_t j, const PhysicistBasis &basis) {
    require_basis_index(m);
    if (j >= basis.labels.size()) {
        throw ContractViolation("physicist outcome must be 0..8, got " + std::to_string(j));
    }
    return basis.labels[j][m];
}

KingResult king_measure(const EntangledState &psi0, const MubSet &mubs, size_t m, Rng &rng) {
    require_basis_index(m);
    std::vector<double> probs = given_atom_probabilities(psi0.state, mubs, m);
    size_t k = sample_outcome(probs, rng);
    return KingResult{k, project_and_normalize(psi0.state, mubs.ket(m, k), AtomSlot::Given)};
}

KingResult king_measure_forced(const EntangledState &psi0, const MubSet &mubs, size_t m, size_t k) {
    require_basis_index(m);
    require_outcome(k);
    return KingResult{k, project_and_normalize(psi0.state, mubs.ket(m, k), AtomSlot::Given)};
}

ExhaustiveReport exhaustive_verify(const TrioTable &trios, const PhysicistBasis &basis) {
    ExhaustiveReport report;
    report.pass = true;
    auto fail = [&](std::string why) {
        if (report.pass) {
            report.failure = std::move(why);
        }
        report.pass = false;
    };
    if (basis.labels.size() != basis.states.dim()) {
        fail("label count does not match basis size");
        return report;
    }
    for (size_t m = 0; m < kNumKingBases; m++) {
        for (size_t k = 0; k < kNumOutcomes; k++) {
            report.cases_checked++;
            std::vector<double> probs = born_probabilities(trios.at(m, k), basis.states);
            size_t reachable = 0;
            for (size_t j = 0; j < probs.size(); j++) {
                if (probs[j] <= kTol) {
                    continue;
                }
                reachable++;
                report.outcomes_checked++;
                report.max_probability_deviation =
                    std::max(report.max_probability_deviation, std::abs(probs[j] - 1.0 / 3.0));
                size_t guess = infer(m, j, basis);
                if (guess != k) {
                    fail(
                        "m=" + std::to_string(m) + " k=" + std::to_string(k) + " j=" + std::to_string(j) +
                        ": inferred " + std::to_string(guess));
                }
            }
            if (reachable != 3) {
                fail(
                    "m=" + std::to_string(m) + " k=" + std::to_string(k) + ": " + std::to_string(reachable) +
                    " reachable outcomes, expected 3");
            }
        }
    }
    if (report.max_probability_deviation >= kTol) {
        fail("reachable outcome probability differs from 1/3");
    }
    return report;
}

std::vector<LabelSet> search_bases() {
    std::vector<LabelSet> found;
    std::array<size_t, kTwoAtomDim> chosen{};

    // Extends `chosen[0..depth)` with labels of larger index only, so every
    // set is produced once, already sorted.
    auto extend = [&](auto &self, size_t depth, size_t start) -> void {
        if (depth == kTwoAtomDim) {
            LabelSet set;
            for (size_t i = 0; i < kTwoAtomDim; i++) {
                set[i] = BracketLabel::from_index(chosen[i]);
            }
            found.push_back(set);
            return;
        }
        // Not enough labels left to finish the set.
        if (kNumLabels - start < kTwoAtomDim - depth) {
            return;
        }
        for (size_t candidate = start; candidate < kNumLabels; candidate++) {
            BracketLabel label = BracketLabel::from_index(candidate);
            bool ok = true;
            for (size_t i = 0; i < depth && ok; i++) {
                ok = agreements(label, BracketLabel::from_index(chosen[i])) == 1;
            }
            if (ok) {
                chosen[depth] = candidate;
                self(self, depth + 1, candidate + 1);
            }
        }
    };
    extend(extend, 0, 0);
    return found;
}

Protocol::Protocol()
    : mubs_(build_qutrit_mubs()),
      psi0_(prepare_psi0()),
      trios_(mubs_),
      psi_basis_(build_psi_basis(psi0_, trios_)),
      physicist_(build_physicist_basis(psi_basis_)) {
}

RoundRecord Protocol::finish_round(size_t m, const KingResult &king, Rng &rng) const {
    std::vector<double> probs = born_probabilities(king.collapsed, physicist_.states);
    RoundRecord rec;
    rec.king_basis = m;
    rec.king_outcome = king.outcome;
    rec.physicist_outcome = sample_outcome(probs, rng);
    rec.inferred = infer(m, rec.physicist_outcome, physicist_);
    rec.success = rec.inferred == rec.king_outcome;
    rec.seed = rng.seed();
    return rec;
}

RoundRecord Protocol::run_round(std::optional<size_t> m, Rng &rng) const {
    size_t basis = m.has_value() ? *m : static_cast<size_t>(rng.uniform_index(kNumKingBases));
    KingResult king = king_measure(psi0_, mubs_, basis, rng);
    return finish_round(basis, king, rng);
}

RoundRecord Protocol::run_forced_round(size_t m, size_t k, Rng &rng) const {
    return finish_round(m, king_measure_forced(psi0_, mubs_, m, k), rng);
}

SimulationSummary Protocol::simulate(uint64_t seed, uint64_t rounds, std::optional<size_t> m) const {
    if (m.has_value()) {
        require_basis_index(*m);
    }
    SimulationSummary summary;
    summary.seed = seed;
    summary.rounds = rounds;
    for (uint64_t i = 0; i < rounds; i++) {
        Rng rng = Rng::stream(seed, i);
        RoundRecord rec = run_round(m, rng);
        rec.seed = seed;
        rec.round_index = i;
        summary.basis_counts[rec.king_basis]++;
        summary.king_histogram[rec.king_basis][rec.king_outcome]++;
        summary.physicist_histogram[rec.physicist_outcome]++;
        if (rec.success) {
            summary.successes++;
        } else if (!summary.first_failure) {
            summary.first_failure = rec;
        }
    }
    return summary;
}

double psi0_form_deviation(const EntangledState &psi0, const TrioTable &trios) {
    double worst = 0;
    for (const auto &form : psi0_forms(trios)) {
        worst = std::max(worst, 1.0 - std::abs(inner_product(psi0.state, form)));
    }
    return worst;
}

double trio_orthogonality_deviation(const TrioTable &trios) {
    double worst = 0;
    for (size_t m = 0; m < kNumKingBases; m++) {
        for (size_t k = 0; k < kNumOutcomes; k++) {
            for (size_t k2 = 0; k2 < kNumOutcomes; k2++) {
                Complex expected = k == k2 ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(inner_product(trios.at(m, k), trios.at(m, k2)) - expected));
            }
        }
    }
    return worst;
}

double transfer_unitarity_deviation() {
    Matrix u = transfer_matrix();
    return max_abs_difference(u.adjoint() * u, Matrix::identity(3));
}

double psi_expansion_deviation(const PsiBasis &basis, const TrioTable &trios) {
    const Matrix u = transfer_matrix();
    double worst = 0;
    for (size_t m = 0; m < kNumKingBases; m++) {
        StateVector diff = basis.reconstructed_psi0[m] - basis.psi[0];
        for (size_t i = 0; i < kTwoAtomDim; i++) {
            worst = std::max(worst, std::abs(diff[i]));
        }
        std::array<const StateVector *, 3> row{&basis.psi[0], &basis.psi[2 * m + 1], &basis.psi[2 * m + 2]};
        for (size_t k = 0; k < kNumOutcomes; k++) {
            StateVector lhs = StateVector::zero(kTwoAtomDim);
            for (size_t r = 0; r < 3; r++) {
                lhs += u(r, k) * *row[r];
            }
            StateVector d = lhs - trios.at(m, k);
            for (size_t i = 0; i < kTwoAtomDim; i++) {
                worst = std::max(worst, std::abs(d[i]));
            }
        }
    }
    return worst;
}

double psi_pair_deviation(const PsiBasis &basis) {
    double worst = 0;
    for (size_t m = 0; m < kNumKingBases; m++) {
        worst = std::max(worst, std::abs(inner_product(basis.psi[2 * m + 1], basis.psi[2 * m + 2])));
    }
    return worst;
}

double bracket_property_deviation(const PsiBasis &basis, const TrioTable &trios) {
    double worst = 0;
    for (size_t idx = 0; idx < kNumLabels; idx++) {
        BracketLabel label = BracketLabel::from_index(idx);
        StateVector b = bracket_state(label, basis);
        for (size_t m = 0; m < kNumKingBases; m++) {
            for (size_t k = 0; k < kNumOutcomes; k++) {
                Complex overlap = inner_product(trios.at(m, k), b);
                double dev = k == label[m] ? std::abs(std::norm(overlap) - 1.0 / 3.0) : std::abs(overlap);
                worst = std::max(worst, dev);
            }
        }
    }
    return worst;
}

OverlapAgreement bracket_overlap_agreement(const PsiBasis &basis) {
    std::vector<StateVector> states;
    states.reserve(kNumLabels);
    for (size_t i = 0; i < kNumLabels; i++) {
        states.push_back(bracket_state(BracketLabel::from_index(i), basis));
    }
    OverlapAgreement out;
    for (size_t a = 0; a < kNumLabels; a++) {
        for (size_t b = 0; b < kNumLabels; b++) {
            Complex numeric = inner_product(states[a], states[b]);
            double analytic = bracket_overlap(BracketLabel::from_index(a), BracketLabel::from_index(b));
            out.max_real_deviation = std::max(out.max_real_deviation, std::abs(numeric.real() - analytic));
            out.max_imag = std::max(out.max_imag, std::abs(numeric.imag()));
        }
    }
    return out;
}

}  // namespace retroking
