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

// gratewave <command> --config <file> --out <dir> [--scale s] [--workers n] [--seed k]

#include "gratewave/commands.hpp"
#include "gratewave/errors.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

int main(int argc, char **argv)
{
    using namespace gratewave;

    CLI::App app{"2D Green's-function MIMO channel simulator for rooms with engineered walls"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string command, config, out_dir;
    double scale = 1.0;
    int workers = 0;
    std::uint64_t seed = 0;

    app.add_option("command", command, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--config", config, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory")->required();
    app.add_option("--scale", scale, "Scale factor for room size and array positions")->check(CLI::PositiveNumber);
    auto *workers_opt = app.add_option("--workers", workers, "Worker threads (default: $GRATEWAVE_WORKERS)")
                            ->check(CLI::PositiveNumber);
    auto *seed_opt = app.add_option("--seed", seed, "Seed for synthetic statistics");

    CLI11_PARSE(app, argc, argv);

    RunOptions options;
    options.out_dir = out_dir;
    options.scale = scale;
    options.log = &std::cerr;
    if (*workers_opt)
        options.exec.workers = workers;
    else if (const char *env = std::getenv("GRATEWAVE_WORKERS"))
    {
        try
        {
            options.exec.workers = std::stoi(env);
        }
        catch (const std::exception &)
        {
            std::cerr << "error: GRATEWAVE_WORKERS must be a positive integer\n";
            return 2;
        }
        if (options.exec.workers < 1)
        {
            std::cerr << "error: GRATEWAVE_WORKERS must be a positive integer\n";
            return 2;
        }
    }
    if (*seed_opt)
        options.seed = seed;

    try
    {
        const Scenario scenario = load_scenario(config);
        const RunResult result = run_command(command, scenario, options);
        for (const auto &p : result.artifacts)
            std::cout << p << '\n';
    }
    catch (const ValidationError &e)
    {
        std::cerr << config << ": invalid scenario: " << e.what() << '\n';
        return 1;
    }
    catch (const ParseError &e)
    {
        std::cerr << config << ": " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error (" << command << ", " << config << "): " << e.what() << '\n';
        return 1;
    }
    return 0;
}
