// SPDX-License-Identifier: Apache-2.0
//
// gratewave: 2D Green's-function MIMO channel simulator for engineered rooms
// Copyright (C) 2026 The gratewave authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "gratewave/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gratewave
{

inline constexpr const char *kVersion = "0.1.0";

struct RunOptions
{
    std::string out_dir = ".";
    Execution exec;
    double scale = 1.0;
    std::optional<std::uint64_t> seed;
    std::ostream *log = nullptr; // progress and guardrail warnings
};

struct RunResult
{
    std::vector<std::string> artifacts; // paths, in write order (manifest last)
};

// field-map, capacity-map, capacity-vs-distance, modes, fit-stats, angular-spectrum,
// compare-walls, period-sweep, reflectance-curve.
const std::vector<std::string> &command_names();

// Runs one command and writes `<command>-<wall>-<hash>.<ext>` artifacts plus
// manifest.json into out_dir. On failure every file written so far is removed and
// the exception propagates.
RunResult run_command(const std::string &command, Scenario scenario, const RunOptions &options);

// Rough Green's-kernel evaluation count of a command, for the guardrail warning.
double estimated_evaluations(const std::string &command, const Scenario &scenario);

inline constexpr double kEvaluationBudget = 1e9;

} // namespace gratewave
