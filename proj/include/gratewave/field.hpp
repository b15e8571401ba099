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

#include "gratewave/greens.hpp"
#include "gratewave/kernels.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gratewave
{

// Regular grid of points origin + (ix, iy) * spacing, stored row-major with x fastest.
struct SamplingGrid
{
    Point origin;
    double spacing = 0.0;
    int nx = 0;
    int ny = 0;

    std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }
    Point point(std::size_t index) const
    {
        return {origin.x + double(index % std::size_t(nx)) * spacing,
                origin.y + double(index / std::size_t(nx)) * spacing};
    }
    bool operator==(const SamplingGrid &) const = default;

    // Cell-centred grid with the given spacing covering the room.
    static SamplingGrid covering(const RoomGeometry &room, double spacing);
    // n x n cell-centred grid over the room.
    static SamplingGrid uniform(const RoomGeometry &room, int n);
};

// Complex samples on a grid; masked samples hold zero.
struct FieldGrid
{
    SamplingGrid grid;
    std::vector<Complex> values;
    std::vector<std::uint8_t> masked;
};

// Radius of the exclusion disc around every source: lambda / 8.
double guard_radius(const RoomGeometry &room);

// True if p is outside the room (when walls are present) or inside a guard disc.
bool guarded(Point p, const GreensEvaluator &evaluator);

// Optional sample selector: points for which it returns false are masked unevaluated.
using PointFilter = std::function<bool(Point)>;

// E-field of the weighted source set of `evaluator` (unit-current units) on the grid.
FieldGrid field_map(const GreensEvaluator &evaluator, const std::vector<Complex> &excitation,
                    const SamplingGrid &grid, const Execution &exec = {}, const PointFilter &select = {});

// total - incident; throws std::invalid_argument for mismatched grids.
FieldGrid scattered_field(const FieldGrid &total, const FieldGrid &incident);

} // namespace gratewave
