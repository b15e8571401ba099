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

#include "gratewave/geometry.hpp"
#include "gratewave/errors.hpp"

namespace gratewave
{

void RoomGeometry::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(length_x) || !positive(length_y))
        throw DomainError("room dimensions must be positive");
    if (!positive(frequency))
        throw DomainError("frequency must be positive");
}

std::vector<Point> ArrayLayout::element_positions() const
{
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(element_count));
    const Point axis{-std::sin(orientation), std::cos(orientation)};
    const double mid = 0.5 * double(element_count - 1);
    for (int i = 0; i < element_count; ++i)
        out.push_back(center + ((double(i) - mid) * spacing) * axis);
    return out;
}

std::array<WallLine, 4> wall_lines(const RoomGeometry &room)
{
    const double lx = room.length_x, ly = room.length_y;
    return {{
        {WallSide::left, {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, ly},
        {WallSide::right, {lx, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, ly},
        {WallSide::bottom, {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, lx},
        {WallSide::top, {0.0, ly}, {1.0, 0.0}, {0.0, -1.0}, lx},
    }};
}

double far_field_distance(double aperture, double wavelength)
{
    if (!(aperture > 0.0) || !(wavelength > 0.0))
        throw DomainError("far_field_distance: aperture and wavelength must be positive");
    return 2.0 * aperture * aperture / wavelength;
}

} // namespace gratewave
