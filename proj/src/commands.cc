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

#include "retroking/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "retroking/mub.h"
#include "retroking/protocol.h"
#include "retroking/rng.h"

namespace retroking {

namespace {

constexpr uint64_t kVerifyMonteCarloRounds = 100000;
constexpr size_t kTomographyTrials = 100;
constexpr double kSigmaBound = 4.0;

nlohmann::json label_to_json(const BracketLabel &label) {
    return nlohmann::json::array({label[0], label[1], label[2], label[3]});
}

std::string fixed(double v, int digits = 6) {
    char buf[48];
    if (std::abs(v) < 5e-13) {
        v = 0;
    }
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string pad(std::string s, size_t width) {
    // Count UTF-8 code points so that "√" occupies one column.
    size_t columns = 0;
    for (unsigned char ch : s) {
        columns += (ch & 0xC0) != 0x80;
    }
    if (columns < width) {
        s.append(width - columns, ' ');
    }
    return s;
}

/// Largest z-score of the histogram cells against a uniform split of `n`
/// draws over `cells` outcomes.
template <typename Hist>
double max_uniform_z_score(const Hist &hist, double n, double cells) {
    if (n <= 0) {
        return 0;
    }
    double p = 1.0 / cells;
    double sigma = std::sqrt(n * p * (1 - p));
    double worst = 0;
    for (auto count : hist) {
        worst = std::max(worst, std::abs(static_cast<double>(count) - n * p) / sigma);
    }
    return worst;
}

void append_matrix_text(Report &report, const std::string &title, const Matrix &m, bool symbolic_tags = true) {
    report.text.push_back(title);
    for (size_t r = 0; r < m.rows(); r++) {
        std::string line = "   ";
        for (size_t c = 0; c < m.cols(); c++) {
            if (symbolic_tags) {
                line += " " + pad(symbolic_entry(m(r, c)), 9) + pad("(" + format_complex(m(r, c)) + ")", 24);
            } else {
                line += " " + pad(format_complex(m(r, c)), 24);
            }
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        report.text.push_back(line);
    }
}

nlohmann::json symbolic_matrix_json(const Matrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(symbolic_entry(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string symbolic_entry(Complex z) {
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const Complex x = cube_root_of_unity();
    struct Candidate {
        Complex value;
        const char *tag;
    };
    const Candidate candidates[] = {
        {Complex{1, 0}, "1/√3"},
        {x, "x/√3"},
        {x * x, "x^2/√3"},
        {Complex{-1, 0}, "-1/√3"},
        {-x, "-x/√3"},
        {-x * x, "-x^2/√3"},
    };
    for (const auto &c : candidates) {
        if (std::abs(z - c.value * inv_sqrt3) < 1e-9) {
            return c.tag;
        }
    }
    return "";
}

Report cmd_verify(const RunConfig &config) {
    Report report;
    report.config = config;
    auto &checks = report.checks;

    auto qubit = certify_unbiasedness(build_qubit_mubs());
    checks.push_back(threshold_check(
        "qubit_mub_unbiasedness", std::max(qubit.max_same_basis_deviation, qubit.max_cross_basis_deviation), kTol));

    const Protocol protocol;
    const MubSet &mubs = protocol.mubs();
    auto qutrit = certify_unbiasedness(mubs);
    checks.push_back(threshold_check(
        "qutrit_mub_unbiasedness", std::max(qutrit.max_same_basis_deviation, qutrit.max_cross_basis_deviation),
        kTol));

    double basis_dev = 0;
    for (const auto &b : mubs.bases) {
        basis_dev = std::max(basis_dev, max_gram_deviation(b));
    }
    checks.push_back(threshold_check("qutrit_basis_orthonormality", basis_dev, kTol));

    Rng rng(config.seed);
    double tomo_err = 0;
    for (size_t t = 0; t < kTomographyTrials; t++) {
        DensityMatrix rho = DensityMatrix::random(rng);
        DensityMatrix back = density_from_probabilities(probabilities_from_density(rho, mubs), mubs);
        tomo_err = std::max(tomo_err, max_abs_difference(rho.matrix(), back.matrix()));
    }
    checks.push_back(threshold_check(
        "tomography_round_trip", tomo_err, kTol, std::to_string(kTomographyTrials) + " random density matrices"));

    size_t rank = tomography_map_rank(mubs);
    checks.push_back(threshold_check(
        "tomography_parameter_count", std::abs(static_cast<double>(rank) - 9.0), 0.5,
        "rank " + std::to_string(rank) + " of 9"));

    const TrioTable &trios = protocol.trios();
    const PsiBasis &psi = protocol.psi_basis();
    checks.push_back(threshold_check("psi0_four_forms", psi0_form_deviation(protocol.psi0(), trios), kTol));
    checks.push_back(threshold_check("trio_orthogonality", trio_orthogonality_deviation(trios), kTol));
    checks.push_back(threshold_check("transfer_unitarity", transfer_unitarity_deviation(), kTol));
    checks.push_back(threshold_check("psi_basis_orthonormality", max_gram_deviation(psi.psi), kTol));
    checks.push_back(threshold_check("psi_pair_orthogonality", psi_pair_deviation(psi), kTol));
    checks.push_back(threshold_check("psi_trio_expansion", psi_expansion_deviation(psi, trios), kTol));
    checks.push_back(threshold_check("bracket_defining_property", bracket_property_deviation(psi, trios), kTol));

    auto agreement = bracket_overlap_agreement(psi);
    checks.push_back(threshold_check(
        "bracket_overlap_closed_form", std::max(agreement.max_real_deviation, agreement.max_imag), kTol,
        "81x81 label pairs"));

    const PhysicistBasis &phys = protocol.physicist();
    checks.push_back(threshold_check("physicist_basis_orthonormality", max_gram_deviation(phys.states), kTol));

    size_t bad_pairs = 0;
    for (size_t a = 0; a < phys.labels.size(); a++) {
        for (size_t b = a + 1; b < phys.labels.size(); b++) {
            bad_pairs += agreements(phys.labels[a], phys.labels[b]) != 1;
        }
    }
    checks.push_back(threshold_check(
        "physicist_label_agreement", static_cast<double>(bad_pairs), 0.5, "label pairs agreeing in exactly one slot"));

    double born_dev = 0;
    for (size_t m = 0; m < kNumKingBases; m++) {
        for (size_t k = 0; k < kNumOutcomes; k++) {
            auto probs = born_probabilities(trios.at(m, k), phys.states);
            double total = 0;
            for (double p : probs) {
                total += p;
            }
            born_dev = std::max(born_dev, std::abs(total - 1));
        }
    }
    checks.push_back(threshold_check("born_probability_normalization", born_dev, kTol));

    ExhaustiveReport exhaustive = protocol.exhaustive_verify();
    checks.push_back(Check{
        "exhaustive_inference", exhaustive.pass, exhaustive.max_probability_deviation,
        exhaustive.pass ? std::to_string(exhaustive.cases_checked) + " cases, " +
                              std::to_string(exhaustive.outcomes_checked) + " outcomes"
                        : exhaustive.failure});

    SimulationSummary mc = protocol.simulate(config.seed, kVerifyMonteCarloRounds, std::nullopt);
    checks.push_back(threshold_check(
        "monte_carlo_certainty", static_cast<double>(mc.rounds - mc.successes), 0.5,
        std::to_string(mc.successes) + "/" + std::to_string(mc.rounds) + " rounds"));

    report.data["monte_carlo_rounds"] = kVerifyMonteCarloRounds;
    report.data["tomography_trials"] = kTomographyTrials;
    report.data["tolerance"] = kTol;
    report.text.push_back(std::to_string(checks.size()) + " checks at tolerance 1e-10");
    return report;
}

Report cmd_tables(const RunConfig &config) {
    Report report;
    report.config = config;
    const Protocol protocol;

    nlohmann::json transforms = nlohmann::json::array();
    report.text.push_back("Eigenbases of A_1, A_2, A_3 in terms of A_0 (column k is |m_k>):");
    for (size_t m = 1; m < kNumKingBases; m++) {
        Matrix t = qutrit_transform(m);
        append_matrix_text(report, "  A_" + std::to_string(m) + ":", t);
        transforms.push_back({{"basis", m}, {"matrix", matrix_to_json(t)}, {"symbolic", symbolic_matrix_json(t)}});
    }
    report.data["transforms"] = transforms;

    Matrix u = transfer_matrix();
    report.text.push_back("");
    append_matrix_text(report, "Trio transfer matrix U:", u);
    report.data["transfer_matrix"] = {{"matrix", matrix_to_json(u)}, {"symbolic", symbolic_matrix_json(u)}};

    bool all_symbolic = true;
    for (size_t m = 1; m < kNumKingBases; m++) {
        const Matrix t = qutrit_transform(m);
        for (const auto &e : t.entries()) {
            all_symbolic = all_symbolic && !symbolic_entry(e).empty();
        }
    }
    report.checks.push_back(Check{"entries_are_roots_of_unity_over_sqrt3", all_symbolic, 0, {}});

    const PhysicistBasis &phys = protocol.physicist();
    report.text.push_back("");
    report.text.push_back("Physicist basis labels and inference table (k inferred for A_0..A_3):");
    nlohmann::json labels = nlohmann::json::array();
    nlohmann::json inference = nlohmann::json::array();
    for (size_t j = 0; j < phys.labels.size(); j++) {
        labels.push_back(label_to_json(phys.labels[j]));
        nlohmann::json row = nlohmann::json::array();
        std::string line = "  P_" + std::to_string(j) + " = " + phys.labels[j].str() + "   ->";
        for (size_t m = 0; m < kNumKingBases; m++) {
            size_t k = infer(m, j, phys);
            row.push_back(k);
            line += " " + std::to_string(k);
        }
        inference.push_back(row);
        report.text.push_back(line);
    }
    report.data["physicist_labels"] = labels;
    report.data["inference_table"] = inference;

    report.text.push_back("");
    report.text.push_back("Bracket overlap <[a]|[b]> by number of matching slots:");
    nlohmann::json summary = nlohmann::json::array();
    double worst = 0;
    for (size_t matches = 0; matches <= 4; matches++) {
        // Representative pair: [0000] against a label agreeing in the first
        // `matches` slots.
        BracketLabel a(0, 0, 0, 0);
        std::array<int, 4> digits{1, 1, 1, 1};
        for (size_t i = 0; i < matches; i++) {
            digits[i] = 0;
        }
        BracketLabel b(digits[0], digits[1], digits[2], digits[3]);
        double analytic = bracket_overlap(a, b);
        Complex numeric =
            inner_product(bracket_state(a, protocol.psi_basis()), bracket_state(b, protocol.psi_basis()));
        worst = std::max(worst, std::abs(numeric - Complex{analytic, 0}));
        summary.push_back({{"matches", matches}, {"overlap", analytic}});
        report.text.push_back("  " + std::to_string(matches) + " -> " + fixed(analytic));
    }
    report.data["overlap_summary"] = summary;
    report.checks.push_back(threshold_check("overlap_summary_matches_numeric", worst, kTol));
    return report;
}

Report cmd_simulate(const RunConfig &config) {
    config.validate();
    Report report;
    report.config = config;
    const Protocol protocol;
    SimulationSummary s = protocol.simulate(config.seed, config.rounds, config.basis);

    std::string failure_detail;
    if (s.first_failure) {
        const RoundRecord &f = *s.first_failure;
        failure_detail = "first failure at round " + std::to_string(f.round_index) + ": m=" +
                         std::to_string(f.king_basis) + " k=" + std::to_string(f.king_outcome) +
                         " j=" + std::to_string(f.physicist_outcome) + " inferred=" + std::to_string(f.inferred);
    }
    report.checks.push_back(
        threshold_check("certainty", static_cast<double>(s.rounds - s.successes), 0.5, failure_detail));

    double king_z = 0;
    for (size_t m = 0; m < kNumKingBases; m++) {
        king_z = std::max(king_z, max_uniform_z_score(s.king_histogram[m], static_cast<double>(s.basis_counts[m]), 3));
    }
    report.checks.push_back(threshold_check("king_outcome_uniformity", king_z, kSigmaBound, "max z-score"));

    report.data["seed"] = s.seed;
    report.data["rounds"] = s.rounds;
    report.data["successes"] = s.successes;
    report.data["failures"] = s.rounds - s.successes;
    report.data["basis_counts"] = s.basis_counts;
    report.data["king_histogram"] = s.king_histogram;
    report.data["physicist_histogram"] = s.physicist_histogram;

    report.text.push_back("rounds:    " + std::to_string(s.rounds));
    report.text.push_back("successes: " + std::to_string(s.successes));
    report.text.push_back("king outcome histogram (rows A_0..A_3, columns k = 0, 1, 2):");
    for (size_t m = 0; m < kNumKingBases; m++) {
        std::string line = "  A_" + std::to_string(m) + ":";
        for (size_t k = 0; k < kNumOutcomes; k++) {
            line += " " + std::to_string(s.king_histogram[m][k]);
        }
        report.text.push_back(line);
    }
    std::string phys = "physicist outcome histogram (P_0..P_8):";
    for (auto c : s.physicist_histogram) {
        phys += " " + std::to_string(c);
    }
    report.text.push_back(phys);
    return report;
}

Report cmd_search(const RunConfig &config) {
    Report report;
    report.config = config;
    const Protocol protocol;

    LabelSet standard = standard_physicist_labels();
    std::sort(standard.begin(), standard.end());

    std::vector<LabelSet> sets = search_bases();
    std::optional<size_t> standard_index;
    double gram_worst = 0;
    double overlap_worst = 0;
    nlohmann::json bases = nlohmann::json::array();
    for (size_t i = 0; i < sets.size(); i++) {
        const LabelSet &set = sets[i];
        bool is_standard = set == standard;
        if (is_standard) {
            standard_index = i;
        }
        PhysicistBasis b = physicist_basis_from_labels(set, protocol.psi_basis());
        gram_worst = std::max(gram_worst, max_gram_deviation(b.states));
        for (size_t a = 0; a < set.size(); a++) {
            for (size_t c = a + 1; c < set.size(); c++) {
                overlap_worst = std::max(overlap_worst, std::abs(bracket_overlap(set[a], set[c])));
            }
        }
        nlohmann::json labels = nlohmann::json::array();
        std::string line = is_standard ? "* " : "  ";
        for (const auto &label : set) {
            labels.push_back(label_to_json(label));
            line += label.str() + " ";
        }
        line.pop_back();
        bases.push_back({{"labels", labels}, {"standard", is_standard}});
        report.text.push_back(line);
    }
    report.text.push_back("");
    report.text.push_back("valid physicist bases: " + std::to_string(sets.size()));
    report.text.push_back("(* marks the built-in basis)");

    report.data["count"] = sets.size();
    report.data["standard_present"] = standard_index.has_value();
    report.data["standard_index"] =
        standard_index.has_value() ? nlohmann::json(*standard_index) : nlohmann::json(nullptr);
    report.data["bases"] = bases;

    report.checks.push_back(Check{"standard_basis_present", standard_index.has_value(), 0, {}});
    report.checks.push_back(threshold_check("pairwise_overlap_zero", overlap_worst, kTol));
    report.checks.push_back(threshold_check("state_orthonormality", gram_worst, kTol));
    return report;
}

Report cmd_tomography(const RunConfig &config) {
    Report report;
    report.config = config;
    const MubSet mubs = build_qutrit_mubs();
    Rng rng(config.seed);

    DensityMatrix rho = [&] {
        switch (config.tomography_input) {
            case TomographyInput::MaximallyMixed:
                return DensityMatrix::maximally_mixed();
            case TomographyInput::Pure:
                return DensityMatrix::pure(mubs.ket(0, 0));
            case TomographyInput::Random:
                break;
        }
        return DensityMatrix::random(rng);
    }();

    ProbabilityTable table = probabilities_from_density(rho, mubs);
    DensityMatrix back = density_from_probabilities(table, mubs);
    double err = max_abs_difference(rho.matrix(), back.matrix());

    append_matrix_text(report, "input density matrix (" + tomography_input_name(config.tomography_input) + "):",
                       rho.matrix(), false);
    report.text.push_back("");
    report.text.push_back("probabilities p[m][k]:");
    nlohmann::json rows = nlohmann::json::array();
    for (size_t m = 0; m < kNumKingBases; m++) {
        std::string line = "  A_" + std::to_string(m) + ":";
        for (size_t k = 0; k < kNumOutcomes; k++) {
            line += " " + pad(fixed(table(m, k)), 10);
        }
        while (line.back() == ' ') {
            line.pop_back();
        }
        report.text.push_back(line);
        rows.push_back(table.rows()[m]);
    }
    report.text.push_back("");
    append_matrix_text(report, "reconstructed density matrix:", back.matrix(), false);
    char err_buf[32];
    std::snprintf(err_buf, sizeof(err_buf), "%.3e", err);
    report.text.push_back("");
    report.text.push_back(std::string("reconstruction error (max entry): ") + err_buf);

    report.data["input"] = tomography_input_name(config.tomography_input);
    report.data["rho"] = matrix_to_json(rho.matrix());
    report.data["probabilities"] = rows;
    report.data["reconstructed"] = matrix_to_json(back.matrix());
    report.data["reconstruction_error"] = err;

    report.checks.push_back(threshold_check("reconstruction_error", err, kTol));
    return report;
}

Report run_command(const RunConfig &config) {
    config.validate();
    auto start = std::chrono::steady_clock::now();
    Report report;
    switch (config.command) {
        case Command::Verify:
            report = cmd_verify(config);
            break;
        case Command::Tables:
            report = cmd_tables(config);
            break;
        case Command::Simulate:
            report = cmd_simulate(config);
            break;
        case Command::SearchBases:
            report = cmd_search(config);
            break;
        case Command::Tomography:
            report = cmd_tomography(config);
            break;
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace retroking
