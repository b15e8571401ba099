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

#include "gratewave/field.hpp"
#include "gratewave/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace gratewave
{

SamplingGrid SamplingGrid::covering(const RoomGeometry &room, double spacing)
{
    if (!(spacing > 0.0))
        throw DomainError("grid spacing must be positive");
    const int nx = std::max(1, int(std::floor(room.length_x / spacing + 1e-9)));
    const int ny = std::max(1, int(std::floor(room.length_y / spacing + 1e-9)));
    // Centre the lattice in the room.
    const Point origin{0.5 * (room.length_x - double(nx - 1) * spacing),
                       0.5 * (room.length_y - double(ny - 1) * spacing)};
    return {origin, spacing, nx, ny};
}

SamplingGrid SamplingGrid::uniform(const RoomGeometry &room, int n)
{
    if (n < 1)
        throw DomainError("grid size must be at least 1");
    if (room.length_x != room.length_y)
        throw DomainError("uniform grid requires a square room");
    const double spacing = room.length_x / double(n);
    return {{0.5 * spacing, 0.5 * spacing}, spacing, n, n};
}

double guard_radius(const RoomGeometry &room) { return room.wavelength() / 8.0; }

bool guarded(Point p, const GreensEvaluator &evaluator)
{
    const bool walls = !std::holds_alternative<FreeSpace>(evaluator.wall());
    if (walls && !evaluator.room().contains_strictly(p))
        return true;
    const double r = guard_radius(evaluator.room());
    for (const Point &s : evaluator.sources())
        if (distance(p, s) < r)
            return true;
    return false;
}

FieldGrid field_map(const GreensEvaluator &evaluator, const std::vector<Complex> &excitation,
                    const SamplingGrid &grid, const Execution &exec, const PointFilter &select)
{
    if (excitation.size() != evaluator.sources().size())
        throw std::invalid_argument("excitation length must match the source count");
    FieldGrid out{grid, std::vector<Complex>(grid.size()), std::vector<std::uint8_t>(grid.size(), 0)};
    const Complex scale = efield_factor(evaluator.room());
    sweep(grid.size(), exec, [&](std::size_t i) {
        const Point p = grid.point(i);
        if ((select && !select(p)) || guarded(p, evaluator))
        {
            out.masked[i] = 1;
            return;
        }
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < excitation.size(); ++j)
            if (excitation[j] != Complex{0.0, 0.0})
                acc += excitation[j] * evaluator.green(p, j);
        out.values[i] = scale * acc;
    });
    return out;
}

FieldGrid scattered_field(const FieldGrid &total, const FieldGrid &incident)
{
    if (!(total.grid == incident.grid) || total.values.size() != incident.values.size() ||
        total.masked.size() != incident.masked.size())
        throw std::invalid_argument("scattered_field: grids are not congruent");
    FieldGrid out = total;
    for (std::size_t i = 0; i < out.values.size(); ++i)
    {
        out.masked[i] = std::uint8_t(total.masked[i] | incident.masked[i]);
        out.values[i] = out.masked[i] ? Complex{0.0, 0.0} : total.values[i] - incident.values[i];
    }
    return out;
}

} // namespace gratewave
