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

#include "retroking/report.h"

#include <cstdio>
#include <sstream>

namespace retroking {

std::string command_name(Command c) {
    switch (c) {
        case Command::Verify:
            return "verify";
        case Command::Tables:
            return "tables";
        case Command::Simulate:
            return "simulate";
        case Command::SearchBases:
            return "search-bases";
        case Command::Tomography:
            return "tomography";
    }
    return "unknown";
}

std::optional<Command> parse_command(const std::string &name) {
    for (Command c : {Command::Verify, Command::Tables, Command::Simulate, Command::SearchBases, Command::Tomography}) {
        if (command_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string tomography_input_name(TomographyInput input) {
    switch (input) {
        case TomographyInput::Random:
            return "random";
        case TomographyInput::MaximallyMixed:
            return "mixed";
        case TomographyInput::Pure:
            return "pure";
    }
    return "unknown";
}

void RunConfig::validate() const {
    if (rounds == 0) {
        throw ContractViolation("--rounds must be at least 1");
    }
    if (basis.has_value() && *basis > 3) {
        throw ContractViolation("--basis must be 0, 1, 2 or 3");
    }
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["rounds"] = rounds;
    j["seed"] = seed;
    j["basis"] = basis.has_value() ? nlohmann::json(*basis) : nlohmann::json(nullptr);
    j["format"] = format == OutputFormat::Json ? "json" : "text";
    j["input"] = tomography_input_name(tomography_input);
    return j;
}

Check threshold_check(std::string name, double deviation, double threshold, std::string detail) {
    return Check{std::move(name), deviation < threshold, deviation, std::move(detail)};
}

bool Report::pass() const {
    for (const auto &c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command_name(config.command);
    j["config"] = config.to_json();
    j["checks"] = nlohmann::json::array();
    for (const auto &c : checks) {
        nlohmann::json entry{{"name", c.name}, {"pass", c.pass}, {"max_deviation", c.max_deviation}};
        if (!c.detail.empty()) {
            entry["detail"] = c.detail;
        }
        j["checks"].push_back(std::move(entry));
    }
    j["pass"] = pass();
    j["data"] = data;
    j["timing"] = {{"elapsed_ms", elapsed_ms}};
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "retroking " << command_name(config.command) << " (seed " << config.seed << ")\n";
    for (const auto &line : text) {
        out << line << "\n";
    }
    if (!checks.empty()) {
        out << "\nchecks:\n";
        for (const auto &c : checks) {
            char dev[32];
            std::snprintf(dev, sizeof(dev), "%.3e", c.max_deviation);
            out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  max_deviation=" << dev;
            if (!c.detail.empty()) {
                out << "  (" << c.detail << ")";
            }
            out << "\n";
        }
    }
    out << "\noverall: " << (pass() ? "PASS" : "FAIL") << "\n";
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.1f", elapsed_ms);
    out << "elapsed: " << ms << " ms\n";
    return out.str();
}

std::string Report::render() const {
    if (config.format == OutputFormat::Json) {
        return to_json().dump(2) + "\n";
    }
    return to_text();
}

nlohmann::json complex_to_json(Complex z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json state_to_json(const StateVector &v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &a : v.amplitudes()) {
        arr.push_back(complex_to_json(a));
    }
    return arr;
}

nlohmann::json matrix_to_json(const Matrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace retroking
