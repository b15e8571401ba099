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

#include "gratewave/mimo.hpp"
#include "gratewave/spectrum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gratewave
{

struct DistanceSweepOptions
{
    double theta_tr = 0.7853981633974483; // rad
    std::vector<double> distances;         // m
};

struct FitStatsOptions
{
    double r_min = 0.0; // m
    double r_max = 0.0; // m
    std::vector<double> room_sizes; // m, square rooms pooled together
    int bins = 50;
    double grid_spacing = 0.0; // m
    // Synthetic ensemble instead of simulated rings when model is "rician" or "hoyt".
    std::string synthetic_model;
    double synthetic_parameter = 0.0; // K or q
    int synthetic_samples = 100000;
};

struct SpectrumOptions
{
    WallSide wall = WallSide::left; // aperture runs parallel to this wall
    double offset = 0.0;            // m in front of the wall
    int samples = 256;
    SpectrumWindow window = SpectrumWindow::none;
    int zero_pad = 4;
};

struct CompareOptions
{
    int grid_points = 0; // n x n receiver grid; 0 uses grid_spacing
};

struct Scenario
{
    RoomGeometry room;
    WallModel wall;
    ArrayLayout tx;
    ArrayLayout rx;
    PowerBudget budget;
    PathTraceLimits limits;
    double grid_spacing = 0.0; // m
    std::uint64_t seed = 0;

    std::vector<Complex> excitation; // per Tx element; empty = all ones
    DistanceSweepOptions distance_sweep;
    FitStatsOptions fit_stats;
    SpectrumOptions spectrum;
    CompareOptions compare;
    std::vector<double> periods; // m, for the period sweep
    int reflectance_angles = 90;

    double wavelength() const { return room.wavelength(); }
    std::vector<Complex> tx_weights() const;

    // Resolved scenario as canonical JSON text (used for hashing and manifests).
    std::string canonical_json() const;

    // Throws ValidationError naming the offending field.
    void validate() const;

    // Multiplies room size, array centres, distances and pooled room sizes by s.
    void scale(double s);
};

// Built-in defaults: 2.4 GHz, 30 lambda square room, free-space walls, N = 6
// half-wavelength arrays at (5, 15) lambda and (20, 15) lambda, P_T = 1 W, P_N = 1e4 W.
Scenario default_scenario();

// Parses a JSON scenario. Lengths are numbers in metres or strings like "5lambda",
// "0.5 lambda", "13mm" or "2m". Throws ParseError (with a line when known) or
// ValidationError.
Scenario parse_scenario(const std::string &text, const std::string &base_dir = ".");
Scenario load_scenario(const std::string &path);

// "5lambda" -> 5 * wavelength, "13mm" -> 0.013, "2" -> 2.
double parse_length(const std::string &text, double wavelength);

WallSide parse_wall_side(const std::string &name);
const char *wall_side_name(WallSide side);

} // namespace gratewave
