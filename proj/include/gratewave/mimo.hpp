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

#include "gratewave/field.hpp"

#include <vector>

namespace gratewave
{

// Complex N_R x N_T matrix, row-major: entry (i, j) couples Tx j to Rx i.
struct ChannelMatrix
{
    int n_rx = 0;
    int n_tx = 0;
    std::vector<Complex> entries;

    ChannelMatrix() = default;
    ChannelMatrix(int rows, int cols) : n_rx(rows), n_tx(cols), entries(std::size_t(rows) * std::size_t(cols)) {}

    Complex &operator()(int i, int j) { return entries[std::size_t(i) * std::size_t(n_tx) + std::size_t(j)]; }
    Complex operator()(int i, int j) const { return entries[std::size_t(i) * std::size_t(n_tx) + std::size_t(j)]; }
};

struct PowerBudget
{
    double p_tx = 1.0;    // W
    double p_noise = 1e4; // W

    void validate() const;
};

struct CapacityResult
{
    std::vector<double> singular_values; // descending
    std::vector<double> gammas;          // water-filling coefficients, sum = N_T
    double capacity = 0.0;               // bit/s/Hz
    int useful_modes = 0;
    int rank = 0;
};

struct WaterfillResult
{
    std::vector<double> gammas;
    double capacity = 0.0;
    double water_level = 0.0; // 0 when no mode is usable
};

// Threshold above which a water-filling coefficient counts as a useful mode.
inline double useful_mode_threshold(int n_tx) { return 1e-9 * double(n_tx); }

// g_ij = E-field at rx[i] from a unit current on source j of `tx`.
ChannelMatrix build_channel_matrix(const GreensEvaluator &tx, const std::vector<Point> &rx);

ChannelMatrix build_channel_matrix(const ArrayLayout &tx, const ArrayLayout &rx, const RoomGeometry &room,
                                   const WallModel &wall, const PathTraceLimits &limits);

// One-sided Jacobi; min(N_R, N_T) values, descending.
std::vector<double> singular_values(const ChannelMatrix &h);

WaterfillResult waterfill(const std::vector<double> &sv, const PowerBudget &budget, int n_tx);

CapacityResult capacity(const ChannelMatrix &h, const PowerBudget &budget);

struct CapacityGrid
{
    SamplingGrid grid;
    std::vector<double> values;
    std::vector<std::uint8_t> masked;
};

// Capacity with the receiver array centred at each grid point. Points where an Rx
// element leaves the room or enters a source guard disc are masked.
CapacityGrid capacity_map(const GreensEvaluator &tx, const ArrayLayout &rx, const PowerBudget &budget,
                          const SamplingGrid &grid, const Execution &exec = {});

struct CapacityImprovement
{
    std::vector<double> delta;        // (C_wall - C_fs) / C_fs, 0 where masked
    std::vector<std::uint8_t> masked; // masked in either input or C_fs <= 0
    double mean = 0.0;
    std::size_t count = 0;
};

CapacityImprovement capacity_improvement(const CapacityGrid &wall, const CapacityGrid &free_space);

struct DistanceSample
{
    double distance = 0.0;
    bool masked = false;
    double capacity = 0.0;
    CapacityResult detail;
};

// Receiver centre at tx_center + d (cos theta, sin theta) for each d.
std::vector<DistanceSample> capacity_vs_distance(const GreensEvaluator &tx, Point tx_center, const ArrayLayout &rx,
                                                 const PowerBudget &budget, double theta_tr,
                                                 const std::vector<double> &distances,
                                                 const Execution &exec = {});

struct ModeSample
{
    double distance = 0.0;
    bool masked = false;
    std::vector<double> normalized_sigmas; // sigma_i / sigma_1
    std::vector<double> gammas;
    int useful_modes = 0;
};

std::vector<ModeSample> mode_analysis(const GreensEvaluator &tx, Point tx_center, const ArrayLayout &rx,
                                      const PowerBudget &budget, double theta_tr,
                                      const std::vector<double> &distances, const Execution &exec = {});

} // namespace gratewave
