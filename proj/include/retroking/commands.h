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

#ifndef RETROKING_COMMANDS_H
#define RETROKING_COMMANDS_H

#include <string>

#include "retroking/linalg.h"
#include "retroking/report.h"

namespace retroking {

/// Every invariant of the MUB, tomography and protocol layers.
Report cmd_verify(const RunConfig &config);
/// Transformation matrices, U, physicist labels, inference table and the
/// bracket-overlap summary.
Report cmd_tables(const RunConfig &config);
/// Monte Carlo protocol rounds.
Report cmd_simulate(const RunConfig &config);
/// Enumeration of every valid physicist basis.
Report cmd_search(const RunConfig &config);
/// Density-matrix reconstruction from the 12 MUB probabilities.
Report cmd_tomography(const RunConfig &config);

/// Validates the config, dispatches on config.command and fills elapsed_ms.
Report run_command(const RunConfig &config);

/// Exact tag for entries of the form c / sqrt3 with c in {±1, ±x, ±x^2}
/// ("x/√3", "-x^2/√3", ...), or the empty string when z is not one of them.
std::string symbolic_entry(Complex z);

}  // namespace retroking

#endif
