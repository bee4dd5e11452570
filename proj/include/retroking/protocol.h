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

#ifndef RETROKING_PROTOCOL_H
#define RETROKING_PROTOCOL_H

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "retroking/linalg.h"
#include "retroking/mub.h"

namespace retroking {

class Rng;

inline constexpr size_t kNumKingBases = 4;
inline constexpr size_t kNumOutcomes = 3;
inline constexpr size_t kNumLabels = 81;
inline constexpr size_t kTwoAtomDim = 9;

/// Names the two-atom state that is orthogonal to every post-measurement
/// state except the one where measuring A_m gave k_m, for each m.
class BracketLabel {
   public:
    BracketLabel() = default;
    /// Throws ContractViolation if any entry is outside 0..2.
    BracketLabel(int k0, int k1, int k2, int k3);
    /// Base-3 decoding of 0..80, k0 most significant.
    static BracketLabel from_index(size_t index);

    size_t index() const;
    uint8_t operator[](size_t m) const {
        return digits_[m];
    }
    /// "[k0k1k2k3]"
    std::string str() const;

    /// Number of positions where the two labels agree.
    friend size_t agreements(const BracketLabel &a, const BracketLabel &b);

    friend auto operator<=>(const BracketLabel &, const BracketLabel &) = default;

   private:
    std::array<uint8_t, 4> digits_{};
};

using LabelSet = std::array<BracketLabel, kTwoAtomDim>;

/// Labels of the physicist's final measurement, in basis order P_0..P_8.
const LabelSet &standard_physicist_labels();

/// The auxiliary atom's basis and outcome paired with (m, k) in the
/// entangled state: m' = 0, 2, 1, 3 and k' = k, except k' = -k mod 3 for m = 3.
size_t partner_basis(size_t m);
size_t partner_outcome(size_t m, size_t k);

struct EntangledState {
    StateVector state;
};

/// 3^{-1/2} (|0_0 0_0> + |0_1 0_1> + |0_2 0_2>).
EntangledState prepare_psi0();

/// trio(m, k) = |m_k> (x) |m'_k'>: the two-atom state left behind when the
/// king's men measure A_m on the given atom and find k.
class TrioTable {
   public:
    explicit TrioTable(const MubSet &mubs);

    const StateVector &at(size_t m, size_t k) const {
        return states_[m][k];
    }

   private:
    std::array<std::array<StateVector, kNumOutcomes>, kNumKingBases> states_;
};

/// The four product-basis expansions of the entangled state,
/// 3^{-1/2} sum_k trio(m, k) for m = 0..3.
std::array<StateVector, kNumKingBases> psi0_forms(const TrioTable &trios);

/// U = F, the 3x3 Fourier matrix relating each trio to (Psi_0, Psi_2m+1, Psi_2m+2).
Matrix transfer_matrix();

/// Psi_0..Psi_8. Psi_0 is the entangled state itself; Psi_2m+1 and Psi_2m+2
/// are obtained from trio m by right multiplication with U^dagger.
struct PsiBasis {
    OrthonormalBasis psi;
    /// For each m, the column-0 vector that trio m produced under U^dagger;
    /// it has to coincide with Psi_0 (not merely up to phase).
    std::array<StateVector, kNumKingBases> reconstructed_psi0;
};

PsiBasis build_psi_basis(const EntangledState &psi0, const TrioTable &trios);

/// (1/3) Psi_0 + (1/3) sum_m (x^k_m Psi_2m+1 + x^-k_m Psi_2m+2).
StateVector bracket_state(const BracketLabel &label, const PsiBasis &basis);

/// Closed form <[a]|[b]> = (agreements(a, b) - 1) / 3.
double bracket_overlap(const BracketLabel &a, const BracketLabel &b);

struct PhysicistBasis {
    OrthonormalBasis states;
    std::vector<BracketLabel> labels;
};

PhysicistBasis physicist_basis_from_labels(const LabelSet &labels, const PsiBasis &basis);
PhysicistBasis build_physicist_basis(const PsiBasis &basis);

/// The king's result implied by the physicist finding P_j after A_m was
/// measured: label_j[m].
size_t infer(size_t m, size_t j, const PhysicistBasis &basis);

struct KingResult {
    size_t outcome = 0;
    StateVector collapsed;
};

/// Measures A_m on the given atom of `psi0` with the Born rule.
KingResult king_measure(const EntangledState &psi0, const MubSet &mubs, size_t m, Rng &rng);
/// Same, but the outcome is imposed instead of sampled. Throws
/// ImpossibleOutcome if it has zero probability.
KingResult king_measure_forced(const EntangledState &psi0, const MubSet &mubs, size_t m, size_t k);

struct RoundRecord {
    size_t king_basis = 0;
    size_t king_outcome = 0;
    size_t physicist_outcome = 0;
    size_t inferred = 0;
    bool success = false;
    uint64_t seed = 0;
    uint64_t round_index = 0;
};

struct ExhaustiveReport {
    bool pass = false;
    size_t cases_checked = 0;
    size_t outcomes_checked = 0;
    /// max over compatible (m, k, j) of |P(j | m, k) - 1/3|.
    double max_probability_deviation = 0;
    /// Empty on success, otherwise describes the first offending tuple.
    std::string failure;
};

/// For every (m, k) and every physicist outcome j reachable from trio(m, k),
/// checks infer(m, j) == k, and that exactly three outcomes are reachable,
/// each with probability 1/3.
ExhaustiveReport exhaustive_verify(const TrioTable &trios, const PhysicistBasis &basis);

/// All 9-label sets whose members pairwise agree in exactly one position,
/// each sorted ascending, in lexicographic order.
std::vector<LabelSet> search_bases();

struct SimulationSummary {
    uint64_t seed = 0;
    uint64_t rounds = 0;
    uint64_t successes = 0;
    std::array<uint64_t, kNumKingBases> basis_counts{};
    /// king_histogram[m][k]
    std::array<std::array<uint64_t, kNumOutcomes>, kNumKingBases> king_histogram{};
    std::array<uint64_t, kTwoAtomDim> physicist_histogram{};
    std::optional<RoundRecord> first_failure;
};

/// Every precomputed object of the protocol, built once and shared
/// read-only.
class Protocol {
   public:
    Protocol();

    const MubSet &mubs() const {
        return mubs_;
    }
    const EntangledState &psi0() const {
        return psi0_;
    }
    const TrioTable &trios() const {
        return trios_;
    }
    const PsiBasis &psi_basis() const {
        return psi_basis_;
    }
    const PhysicistBasis &physicist() const {
        return physicist_;
    }

    /// One full round: prepare, king measures A_m (uniformly random m when
    /// unset), physicist measures her basis, infers.
    RoundRecord run_round(std::optional<size_t> m, Rng &rng) const;
    /// Round with the king's outcome imposed; only the physicist samples.
    RoundRecord run_forced_round(size_t m, size_t k, Rng &rng) const;

    /// Round i draws from Rng::stream(seed, i).
    SimulationSummary simulate(uint64_t seed, uint64_t rounds, std::optional<size_t> m) const;

    ExhaustiveReport exhaustive_verify() const {
        return retroking::exhaustive_verify(trios_, physicist_);
    }

   private:
    RoundRecord finish_round(size_t m, const KingResult &king, Rng &rng) const;

    MubSet mubs_;
    EntangledState psi0_;
    TrioTable trios_;
    PsiBasis psi_basis_;
    PhysicistBasis physicist_;
};

// Deviation measures used by the verification suite. Each returns the worst
// absolute deviation from the exact value.

/// max_m (1 - |<Psi0|form_m>|)
double psi0_form_deviation(const EntangledState &psi0, const TrioTable &trios);
/// Within each fixed m, max |<trio(m,k)|trio(m,k')> - delta_kk'|.
double trio_orthogonality_deviation(const TrioTable &trios);
/// max |U^dagger U - I|
double transfer_unitarity_deviation();
/// max over m and k of ||(Psi_0, Psi_2m+1, Psi_2m+2) U e_k - trio(m,k)||_inf,
/// together with the reconstructed-Psi_0 mismatch.
double psi_expansion_deviation(const PsiBasis &basis, const TrioTable &trios);
/// max_m |<Psi_2m+1|Psi_2m+2>|
double psi_pair_deviation(const PsiBasis &basis);
/// Over all 81 labels and 12 (m, k): |overlap| when k != k_m and
/// ||overlap|^2 - 1/3| when k == k_m.
double bracket_property_deviation(const PsiBasis &basis, const TrioTable &trios);

struct OverlapAgreement {
    double max_real_deviation = 0;
    double max_imag = 0;
};
/// Closed form versus numeric inner products for all 81 x 81 label pairs.
OverlapAgreement bracket_overlap_agreement(const PsiBasis &basis);

}  // namespace retroking

#endif
