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

#ifndef RETROKING_REPORT_H
#define RETROKING_REPORT_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "retroking/linalg.h"

namespace retroking {

enum class Command { Verify, Tables, Simulate, SearchBases, Tomography };
enum class OutputFormat { Text, Json };
/// Which density matrix the tomography demo reconstructs.
enum class TomographyInput { Random, MaximallyMixed, Pure };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string &name);
std::string tomography_input_name(TomographyInput input);

struct RunConfig {
    Command command = Command::Verify;
    uint64_t rounds = 10000;
    uint64_t seed = 0;
    std::optional<size_t> basis;
    OutputFormat format = OutputFormat::Text;
    TomographyInput tomography_input = TomographyInput::Random;

    /// Throws ContractViolation for rounds == 0 or basis outside 0..3.
    void validate() const;
    nlohmann::json to_json() const;
};

struct Check {
    std::string name;
    bool pass = false;
    double max_deviation = 0;
    std::string detail;
};

/// Check that passes iff `deviation < threshold`.
Check threshold_check(std::string name, double deviation, double threshold, std::string detail = {});

struct Report {
    RunConfig config;
    std::vector<Check> checks;
    /// Command-specific payload, also the source of the text rendering.
    nlohmann::json data = nlohmann::json::object();
    /// Human-readable body printed above the check list in text mode.
    std::vector<std::string> text;
    double elapsed_ms = 0;

    /// Conjunction of all checks.
    bool pass() const;

    /// {"command", "config", "checks", "pass", "data", "timing"}
    nlohmann::json to_json() const;
    std::string to_text() const;
    std::string render() const;
};

/// Complex numbers are written as [re, im].
nlohmann::json complex_to_json(Complex z);
nlohmann::json state_to_json(const StateVector &v);
nlohmann::json matrix_to_json(const Matrix &m);

}  // namespace retroking

#endif
