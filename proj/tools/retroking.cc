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

#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "retroking/commands.h"
#include "retroking/report.h"

using namespace retroking;

int main(int argc, char **argv) {
    CLI::App app{"Spin-1 mean king retrodiction: verification, tables, simulation, basis search, tomography"};
    app.require_subcommand(1);

    RunConfig config;
    size_t basis = 0;
    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text}, {"json", OutputFormat::Json}};
    const std::map<std::string, TomographyInput> inputs{
        {"random", TomographyInput::Random},
        {"mixed", TomographyInput::MaximallyMixed},
        {"pure", TomographyInput::Pure}};

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", config.seed, "Seed of the random stream")->capture_default_str();
        sub->add_option("--format", config.format, "Output format: text or json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto *verify = app.add_subcommand("verify", "Run every invariant check");
    add_common(verify);

    auto *tables = app.add_subcommand("tables", "Print basis matrices, U, labels and inference table");
    add_common(tables);

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo rounds of the protocol");
    add_common(simulate);
    simulate->add_option("--rounds", config.rounds, "Number of rounds")->capture_default_str();
    auto *basis_opt =
        simulate->add_option("--basis", basis, "Fix the king's observable A_m (default: random)")->check(
            CLI::Range(0, 3));

    auto *search = app.add_subcommand("search-bases", "Enumerate every valid physicist basis");
    add_common(search);

    auto *tomography = app.add_subcommand("tomography", "Reconstruct a density matrix from MUB probabilities");
    add_common(tomography);
    tomography->add_option("--input", config.tomography_input, "random, mixed or pure")
        ->transform(CLI::CheckedTransformer(inputs, CLI::ignore_case));

    CLI11_PARSE(app, argc, argv);

    const CLI::App *chosen = app.get_subcommands().front();
    config.command = *parse_command(chosen->get_name());
    if (basis_opt->count() > 0) {
        config.basis = basis;
    }

    try {
        Report report = run_command(config);
        std::cout << report.render();
        if (!report.pass()) {
            for (const auto &c : report.checks) {
                if (!c.pass) {
                    std::cerr << "check failed: " << c.name << "\n";
                }
            }
            return 1;
        }
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
