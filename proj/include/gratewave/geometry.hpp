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

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace gratewave
{

namespace constants
{
inline constexpr double c0 = 299792458.0;                     // m/s
inline constexpr double mu0 = 4.0e-7 * std::numbers::pi;      // H/m
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);         // F/m
inline constexpr double eta0 = mu0 * c0;                      // ohm
} // namespace constants

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Rectangular room [0, length_x] x [0, length_y] at a single frequency.
struct RoomGeometry
{
    double length_x = 0.0; // m
    double length_y = 0.0; // m
    double frequency = 0.0; // Hz

    double omega() const { return 2.0 * std::numbers::pi * frequency; }
    double wavelength() const { return constants::c0 / frequency; }
    double k0() const { return omega() / constants::c0; }

    bool contains_strictly(Point p) const
    {
        return p.x > 0.0 && p.x < length_x && p.y > 0.0 && p.y < length_y;
    }

    // Throws DomainError unless all fields are positive and finite.
    void validate() const;
};

// Uniform linear array. Elements lie along the axis (-sin(orientation), cos(orientation)),
// centered on `center`; orientation = 0 puts the array along y with broadside toward +x.
struct ArrayLayout
{
    Point center;
    int element_count = 1;
    double spacing = 0.0;     // m
    double orientation = 0.0; // rad

    Point broadside() const { return {std::cos(orientation), std::sin(orientation)}; }
    std::vector<Point> element_positions() const;
    ArrayLayout translated_to(Point c) const
    {
        ArrayLayout out = *this;
        out.center = c;
        return out;
    }
};

// Walls of the room, indexed 0..3.
enum class WallSide
{
    left = 0,   // x = 0
    right = 1,  // x = length_x
    bottom = 2, // y = 0
    top = 3     // y = length_y
};

// Line description of one wall: points origin + t * tangent, t in [0, length].
struct WallLine
{
    WallSide side;
    Point origin;
    Point tangent;
    Point inward_normal;
    double length;
};

std::array<WallLine, 4> wall_lines(const RoomGeometry &room);

// 2 D^2 / lambda. Throws DomainError for non-positive inputs.
double far_field_distance(double aperture, double wavelength);

} // namespace gratewave
