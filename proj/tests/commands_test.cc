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

#include <cmath>

#include "gtest/gtest.h"
#include "retroking/mub.h"

using namespace retroking;

namespace {

RunConfig config_for(Command c) {
    RunConfig config;
    config.command = c;
    return config;
}

nlohmann::json without_timing(nlohmann::json j) {
    j.erase("timing");
    return j;
}

}  // namespace

TEST(commands, verify_passes) {
    Report r = run_command(config_for(Command::Verify));
    EXPECT_TRUE(r.pass());
    EXPECT_GE(r.checks.size(), 15u);
    for (const auto &c : r.checks) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
        EXPECT_LT(c.max_deviation, 1e-10) << c.name;
    }
    nlohmann::json j = r.to_json();
    EXPECT_EQ(j["command"], "verify");
    EXPECT_EQ(j["pass"], true);
    EXPECT_EQ(j["checks"].size(), r.checks.size());
    EXPECT_EQ(nlohmann::json::parse(j.dump()), j);
}

TEST(commands, verify_json_and_text_agree) {
    RunConfig config = config_for(Command::Verify);
    Report text = run_command(config);
    config.format = OutputFormat::Json;
    Report json = run_command(config);
    ASSERT_EQ(text.checks.size(), json.checks.size());
    std::string rendered = text.render();
    for (size_t i = 0; i < text.checks.size(); i++) {
        EXPECT_EQ(text.checks[i].name, json.checks[i].name);
        EXPECT_EQ(text.checks[i].max_deviation, json.checks[i].max_deviation);
        EXPECT_NE(rendered.find(text.checks[i].name), std::string::npos);
    }
    auto parsed = nlohmann::json::parse(json.render());
    EXPECT_EQ(parsed["config"]["format"], "json");
}

TEST(commands, tables) {
    Report r = run_command(config_for(Command::Tables));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.data["inference_table"][3], nlohmann::json::array({1, 0, 1, 2}));
    EXPECT_EQ(r.data["physicist_labels"][8], nlohmann::json::array({2, 2, 1, 0}));
    EXPECT_EQ(r.data["transfer_matrix"]["symbolic"][1][2], "x^2/√3");
    EXPECT_EQ(r.data["transforms"][0]["symbolic"][0][0], "x/√3");
    EXPECT_EQ(r.data["transforms"][1]["symbolic"][1][1], "x^2/√3");

    const auto &summary = r.data["overlap_summary"];
    ASSERT_EQ(summary.size(), 5u);
    std::array<double, 5> expected{-1.0 / 3, 0, 1.0 / 3, 2.0 / 3, 1};
    for (size_t i = 0; i < 5; i++) {
        EXPECT_EQ(summary[i]["matches"], i);
        EXPECT_NEAR(summary[i]["overlap"].get<double>(), expected[i], 1e-15);
    }

    // Complex entries are [re, im] pairs.
    auto u12 = r.data["transfer_matrix"]["matrix"][1][2];
    ASSERT_EQ(u12.size(), 2u);
    EXPECT_NEAR(u12[0].get<double>(), -0.5 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(u12[1].get<double>(), -0.5, 1e-15);

    std::string text = r.to_text();
    EXPECT_NE(text.find("P_3 = [1012]   -> 1 0 1 2"), std::string::npos);
    EXPECT_NE(text.find("x^2/√3"), std::string::npos);
}

TEST(commands, symbolic_entry) {
    Complex x = cube_root_of_unity();
    double s = 1 / std::sqrt(3.0);
    EXPECT_EQ(symbolic_entry(Complex{s, 0}), "1/√3");
    EXPECT_EQ(symbolic_entry(x * s), "x/√3");
    EXPECT_EQ(symbolic_entry(x * x * s), "x^2/√3");
    EXPECT_EQ(symbolic_entry(-x * s), "-x/√3");
    EXPECT_EQ(symbolic_entry(Complex{0.5, 0}), "");
}

TEST(commands, simulate) {
    RunConfig config = config_for(Command::Simulate);
    config.rounds = 100000;
    config.seed = 9;
    Report r = run_command(config);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.data["successes"], 100000u);
    EXPECT_EQ(r.data["failures"], 0u);

    uint64_t total = 0;
    for (size_t m = 0; m < 4; m++) {
        double n = r.data["basis_counts"][m].get<double>();
        double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
        for (size_t k = 0; k < 3; k++) {
            double c = r.data["king_histogram"][m][k].get<double>();
            EXPECT_LT(std::abs(c - n / 3), 4 * sigma);
            total += static_cast<uint64_t>(c);
        }
    }
    EXPECT_EQ(total, 100000u);
}

TEST(commands, simulate_is_deterministic) {
    RunConfig config = config_for(Command::Simulate);
    config.rounds = 1000;
    config.seed = 42;
    config.format = OutputFormat::Json;
    auto a = without_timing(run_command(config).to_json()).dump();
    auto b = without_timing(run_command(config).to_json()).dump();
    EXPECT_EQ(a, b);

    config.seed = 43;
    auto c = without_timing(run_command(config).to_json()).dump();
    EXPECT_NE(a, c);
}

TEST(commands, simulate_fixed_basis) {
    RunConfig config = config_for(Command::Simulate);
    config.rounds = 300;
    config.basis = 3;
    Report r = run_command(config);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.data["basis_counts"][3], 300u);
    EXPECT_EQ(r.to_json()["config"]["basis"], 3);
}

TEST(commands, invalid_config) {
    RunConfig config = config_for(Command::Simulate);
    config.rounds = 0;
    EXPECT_THROW(run_command(config), ContractViolation);
    config.rounds = 10;
    config.basis = 4;
    EXPECT_THROW(run_command(config), ContractViolation);
}

TEST(commands, search) {
    Report r = run_command(config_for(Command::SearchBases));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.data["standard_present"], true);
    EXPECT_EQ(r.data["count"], r.data["bases"].size());
    size_t flagged = 0;
    for (const auto &b : r.data["bases"]) {
        EXPECT_EQ(b["labels"].size(), 9u);
        EXPECT_EQ(b["labels"][0].size(), 4u);
        flagged += b["standard"].get<bool>();
    }
    EXPECT_EQ(flagged, 1u);
}

TEST(commands, tomography_inputs) {
    RunConfig config = config_for(Command::Tomography);

    config.tomography_input = TomographyInput::MaximallyMixed;
    Report mixed = run_command(config);
    EXPECT_TRUE(mixed.pass());
    EXPECT_LT(mixed.data["reconstruction_error"].get<double>(), 1e-12);
    for (const auto &row : mixed.data["probabilities"]) {
        for (const auto &p : row) {
            EXPECT_NEAR(p.get<double>(), 1.0 / 3, 1e-14);
        }
    }

    config.tomography_input = TomographyInput::Pure;
    Report pure = run_command(config);
    EXPECT_TRUE(pure.pass());
    EXPECT_NEAR(pure.data["probabilities"][0][0].get<double>(), 1, 1e-14);
    EXPECT_NEAR(pure.data["probabilities"][0][1].get<double>(), 0, 1e-14);
    for (size_t m = 1; m < 4; m++) {
        for (size_t k = 0; k < 3; k++) {
            EXPECT_NEAR(pure.data["probabilities"][m][k].get<double>(), 1.0 / 3, 1e-14);
        }
    }

    for (uint64_t seed = 0; seed < 20; seed++) {
        config.tomography_input = TomographyInput::Random;
        config.seed = seed;
        Report r = run_command(config);
        EXPECT_TRUE(r.pass());
        EXPECT_LT(r.data["reconstruction_error"].get<double>(), 1e-10);
    }
}

TEST(commands, aggregate_pass_is_conjunction) {
    Report r;
    r.checks.push_back(Check{"a", true, 0, {}});
    EXPECT_TRUE(r.pass());
    r.checks.push_back(Check{"b", false, 1, {}});
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.to_json()["pass"], false);
    EXPECT_NE(r.to_text().find("FAIL  b"), std::string::npos);
}

TEST(commands, parse_command_names) {
    EXPECT_EQ(parse_command("search-bases"), Command::SearchBases);
    EXPECT_EQ(parse_command("tomography"), Command::Tomography);
    EXPECT_FALSE(parse_command("bogus").has_value());
}
