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

#include <cmath>

#include "gtest/gtest.h"
#include "retroking/mub.h"
#include "retroking/protocol.h"
#include "retroking/rng.h"

using namespace retroking;

namespace {

StateVector random_state(size_t dim, Rng &rng) {
    std::vector<Complex> amps(dim);
    for (auto &a : amps) {
        double re = rng.gaussian();
        double im = rng.gaussian();
        a = Complex{re, im};
    }
    return StateVector(std::move(amps)).normalized();
}

const Complex kX = std::polar(1.0, 2 * M_PI / 3);

}  // namespace

TEST(linalg, inner_product_examples) {
    auto e0 = StateVector::basis_state(3, 0);
    auto e1 = StateVector::basis_state(3, 1);
    EXPECT_NEAR(std::abs(inner_product(e0, e0) - Complex{1, 0}), 0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(e0, e1)), 0, 1e-15);

    MubSet mubs = build_qutrit_mubs();
    Complex z = inner_product(mubs.ket(0, 0), mubs.ket(1, 0));
    EXPECT_NEAR(std::abs(z - kX / std::sqrt(3.0)), 0, 1e-15);
}

TEST(linalg, inner_product_conjugates_left) {
    StateVector a{Complex{0, 1}, 0};
    StateVector b{1, 0};
    EXPECT_NEAR(std::abs(inner_product(a, b) - Complex{0, -1}), 0, 1e-15);
}

TEST(linalg, inner_product_dimension_mismatch) {
    EXPECT_THROW(inner_product(StateVector::basis_state(3, 0), StateVector::basis_state(2, 0)), ContractViolation);
}

TEST(linalg, tensor_product_examples) {
    auto e = [](size_t d, size_t i) { return StateVector::basis_state(d, i); };
    EXPECT_NEAR(std::abs(inner_product(tensor_product(e(3, 0), e(3, 0)), e(9, 0))), 1, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(tensor_product(e(3, 1), e(3, 2)), e(9, 5))), 1, 1e-15);

    // |0_0 0_0> is the first term of the entangled state before its 3^{-1/2}.
    MubSet mubs = build_qutrit_mubs();
    StateVector first = tensor_product(mubs.ket(0, 0), mubs.ket(0, 0));
    StateVector psi0 = prepare_psi0().state;
    EXPECT_NEAR(std::abs(inner_product(first, psi0) - Complex{1 / std::sqrt(3.0), 0}), 0, 1e-15);
}

TEST(linalg, tensor_product_rejects_wrong_dimensions) {
    EXPECT_THROW(tensor_product(StateVector::basis_state(2, 0), StateVector::basis_state(3, 0)), ContractViolation);
    EXPECT_THROW(tensor_product(StateVector::basis_state(9, 0), StateVector::basis_state(3, 0)), ContractViolation);
}

TEST(linalg, project_and_normalize_examples) {
    MubSet mubs = build_qutrit_mubs();
    StateVector psi0 = prepare_psi0().state;

    StateVector c1 = project_and_normalize(psi0, mubs.ket(0, 1), AtomSlot::Given);
    EXPECT_TRUE(equal_up_to_global_phase(c1, tensor_product(mubs.ket(0, 1), mubs.ket(0, 1))));

    StateVector c2 = project_and_normalize(psi0, mubs.ket(3, 1), AtomSlot::Given);
    EXPECT_TRUE(equal_up_to_global_phase(c2, tensor_product(mubs.ket(3, 1), mubs.ket(3, 2))));

    EXPECT_THROW(
        project_and_normalize(StateVector::basis_state(9, 0), StateVector::basis_state(3, 1), AtomSlot::Given),
        ImpossibleOutcome);
}

TEST(linalg, project_on_auxiliary_slot) {
    // |1>|2> projected on the auxiliary atom onto |2> is unchanged; onto |0> it is impossible.
    StateVector s = StateVector::basis_state(9, 5);
    StateVector out = project_and_normalize(s, StateVector::basis_state(3, 2), AtomSlot::Auxiliary);
    EXPECT_TRUE(equal_up_to_global_phase(out, s));
    EXPECT_THROW(project_and_normalize(s, StateVector::basis_state(3, 0), AtomSlot::Auxiliary), ImpossibleOutcome);

    // On the entangled state, finding |2_k> on the auxiliary atom leaves the given atom in |1_k>.
    MubSet mubs = build_qutrit_mubs();
    StateVector c = project_and_normalize(prepare_psi0().state, mubs.ket(2, 1), AtomSlot::Auxiliary);
    EXPECT_TRUE(equal_up_to_global_phase(c, tensor_product(mubs.ket(1, 1), mubs.ket(2, 1))));
}

TEST(linalg, born_probabilities_examples) {
    auto probs = born_probabilities(StateVector::basis_state(9, 0), OrthonormalBasis::standard(9));
    for (size_t j = 0; j < 9; j++) {
        EXPECT_NEAR(probs[j], j == 0 ? 1 : 0, 1e-15);
    }

    MubSet mubs = build_qutrit_mubs();
    for (double p : born_probabilities(mubs.ket(0, 0), mubs.bases[1])) {
        EXPECT_NEAR(p, 1.0 / 3, 1e-12);
    }

    EXPECT_THROW(born_probabilities(StateVector::basis_state(3, 0), OrthonormalBasis::standard(9)), ContractViolation);
}

TEST(linalg, born_probabilities_of_collapsed_state_in_physicist_basis) {
    // Oracle: work in the Psi coordinates. trio(0,1) = (Psi_0 + x Psi_1 + x^2 Psi_2)/sqrt3
    // and [k] = (Psi_0 + sum_m x^k_m Psi_2m+1 + x^-k_m Psi_2m+2)/3, so the overlap
    // is (1 + x^(k_0 - 1) + x^(1 - k_0)) / (3 sqrt3): 1/sqrt3 when k_0 = 1 and 0 otherwise.
    std::array<double, 9> expected{};
    const auto &labels = standard_physicist_labels();
    for (size_t j = 0; j < 9; j++) {
        int k0 = labels[j][0];
        Complex amp = (1.0 + std::pow(kX, k0 - 1) + std::pow(kX, 1 - k0)) / (3 * std::sqrt(3.0));
        expected[j] = std::norm(amp);
    }
    // Frozen: P_3, P_4, P_5 carry k_0 = 1.
    for (size_t j = 0; j < 9; j++) {
        EXPECT_NEAR(expected[j], (j >= 3 && j <= 5) ? 1.0 / 3 : 0.0, 1e-12) << j;
    }

    Protocol protocol;
    MubSet mubs = build_qutrit_mubs();
    StateVector collapsed = tensor_product(mubs.ket(0, 1), mubs.ket(0, 1));
    auto probs = born_probabilities(collapsed, protocol.physicist().states);
    for (size_t j = 0; j < 9; j++) {
        EXPECT_NEAR(probs[j], expected[j], 1e-12) << j;
    }
}

TEST(linalg, sample_outcome_degenerate_distributions) {
    for (uint64_t seed = 0; seed < 20; seed++) {
        Rng rng(seed);
        std::vector<double> first{1, 0, 0};
        std::vector<double> last{0, 0, 1};
        EXPECT_EQ(sample_outcome(first, rng), 0u);
        EXPECT_EQ(sample_outcome(last, rng), 2u);
    }
}

TEST(linalg, sample_outcome_never_picks_rounding_dust) {
    std::vector<double> probs{0.5, 1e-14, 0.5 - 1e-14};
    Rng rng(7);
    for (int i = 0; i < 20000; i++) {
        EXPECT_NE(sample_outcome(probs, rng), 1u);
    }
}

TEST(linalg, sample_outcome_uniform_frequencies) {
    const int n = 100000;
    std::vector<double> probs{1.0 / 3, 1.0 / 3, 1.0 / 3};
    Rng rng(12345);
    std::array<int, 3> counts{};
    for (int i = 0; i < n; i++) {
        counts[sample_outcome(probs, rng)]++;
    }
    double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
    for (int c : counts) {
        EXPECT_LT(std::abs(c - n / 3.0), 4 * sigma);
    }
}

TEST(linalg, sample_outcome_is_reproducible) {
    std::vector<double> probs{0.2, 0.3, 0.5};
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 1000; i++) {
        ASSERT_EQ(sample_outcome(probs, a), sample_outcome(probs, b));
    }
}

TEST(linalg, sample_outcome_rejects_malformed) {
    Rng rng(0);
    std::vector<double> empty;
    std::vector<double> short_sum{0.5, 0.4};
    std::vector<double> negative{1.5, -0.5};
    std::vector<double> nan{std::nan(""), 1};
    EXPECT_THROW(sample_outcome(empty, rng), ContractViolation);
    EXPECT_THROW(sample_outcome(short_sum, rng), ContractViolation);
    EXPECT_THROW(sample_outcome(negative, rng), ContractViolation);
    EXPECT_THROW(sample_outcome(nan, rng), ContractViolation);
}

TEST(linalg, equal_up_to_global_phase_examples) {
    Rng rng(3);
    StateVector v = random_state(3, rng);
    EXPECT_TRUE(equal_up_to_global_phase(v, v));
    EXPECT_TRUE(equal_up_to_global_phase(v, kX * v));
    EXPECT_FALSE(equal_up_to_global_phase(StateVector::basis_state(3, 0), StateVector::basis_state(3, 1)));
    EXPECT_THROW(
        equal_up_to_global_phase(StateVector::basis_state(3, 0), StateVector::basis_state(9, 0)), ContractViolation);
}

TEST(linalg, rejects_non_finite_amplitudes) {
    EXPECT_THROW(StateVector({Complex{std::nan(""), 0}}), ContractViolation);
}

TEST(linalg, random_state_properties) {
    Rng rng(2024);
    for (int trial = 0; trial < 200; trial++) {
        StateVector a = random_state(3, rng);
        StateVector b = random_state(3, rng);
        StateVector ab = tensor_product(a, b);
        ASSERT_NEAR(ab.norm(), a.norm() * b.norm(), kTol);

        OrthonormalBasis basis = build_qutrit_mubs().bases[trial % 4];
        double total = 0;
        for (double p : born_probabilities(a, basis)) {
            total += p;
        }
        ASSERT_NEAR(total, 1, kTol);

        StateVector two = random_state(9, rng);
        StateVector v = random_state(3, rng);
        StateVector collapsed = project_and_normalize(two, v, trial % 2 ? AtomSlot::Given : AtomSlot::Auxiliary);
        ASSERT_NEAR(collapsed.norm(), 1, kTol);
    }
}

TEST(linalg, gram_deviation_detects_broken_basis) {
    EXPECT_LT(max_gram_deviation(OrthonormalBasis::standard(4)), 1e-15);
    OrthonormalBasis broken = OrthonormalBasis::standard(3);
    broken[1] = StateVector::basis_state(3, 0);
    EXPECT_NEAR(max_gram_deviation(broken), 1, 1e-15);
}

TEST(linalg, format_complex) {
    EXPECT_EQ(format_complex(Complex{1, 0}), "1+0i");
    EXPECT_EQ(format_complex(kX / std::sqrt(3.0)), "-0.288675+0.5i");
    EXPECT_EQ(format_complex(Complex{0.5, -1e-17}), "0.5+0i");
}

TEST(rng, streams_are_distinct_and_reproducible) {
    Rng a = Rng::stream(42, 0);
    Rng b = Rng::stream(42, 1);
    Rng c = Rng::stream(42, 0);
    uint64_t x = a.next_u64();
    EXPECT_NE(x, b.next_u64());
    EXPECT_EQ(x, c.next_u64());
}

TEST(rng, uniform_in_unit_interval) {
    Rng rng(1);
    double total = 0;
    for (int i = 0; i < 100000; i++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0);
        ASSERT_LT(u, 1);
        total += u;
    }
    EXPECT_NEAR(total / 100000, 0.5, 4 * std::sqrt(1.0 / 12 / 100000));
}

TEST(rng, gaussian_moments) {
    Rng rng(5);
    const int n = 200000;
    double sum = 0;
    double sum_sq = 0;
    for (int i = 0; i < n; i++) {
        double g = rng.gaussian();
        sum += g;
        sum_sq += g * g;
    }
    EXPECT_NEAR(sum / n, 0, 4 / std::sqrt(n));
    EXPECT_NEAR(sum_sq / n, 1, 4 * std::sqrt(2.0 / n));
}
