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

#include "gratewave/grating.hpp"
#include "gratewave/greens.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace gratewave
{

// Beam tracer for the grating paths that contain at least one non-specular order.
//
// A branch is a sequence of (wall, order) interactions. Rays are launched from the
// source over a uniform fan of angles; at each wall hit the tangential direction
// cosine is shifted by -m lambda/p. For an observation point, every sign change of
// the ray-to-point offset between adjacent fan samples is refined by bisection to
// the ray through the point. The branch contributes
//
//     prod_l R_{m_l}(theta_l) e^{j 2 pi m_l t_l / p} * G0(s),
//
// where t_l is the hit coordinate along the wall and s the unfolded path length,
// i.e. a cylindrical wave launched from the specular image point and redirected
// along the diffracted ray at each hit. Purely specular branches are left to the
// image lattice.
class DiffractedBranchTracer
{
public:
    struct Branch
    {
        std::vector<int> walls;  // WallSide indices
        std::vector<int> orders; // diffraction order per hit
    };

    struct Hit
    {
        int wall;
        double along;     // coordinate along the wall tangent
        double sin_theta; // signed sine of the incidence angle
    };

    struct Ray
    {
        Point end;
        Point direction;
        double length = 0.0;
        std::vector<Hit> hits;
    };

    DiffractedBranchTracer(const RoomGeometry &room, const GratingSpec &spec, const PathTraceLimits &limits,
                           Point source);

    // Sum over all diffracted branches at obs (strictly inside the room).
    Complex sum(Point obs) const;

    // Contribution of a single branch at obs (strictly inside the room).
    Complex branch_sum(std::size_t branch, Point obs) const;

    const std::vector<Branch> &branches() const { return branches_; }

    // Traces one branch for a launch angle; false if the ray leaves the branch
    // (wrong wall hit first, or an order turns evanescent).
    bool trace(const Branch &branch, double launch_angle, Ray &ray) const;

private:
    Complex contribution(const Ray &ray, const Branch &branch, Point obs) const;

    RoomGeometry room_;
    GratingSpec spec_;
    PathTraceLimits limits_;
    Point source_;
    double wavelength_;
    std::array<WallLine, 4> walls_;
    std::vector<Branch> branches_;

    // Fan samples, branch-major: launch angle index k of branch b at b * fan + k.
    std::vector<std::uint8_t> valid_;
    std::vector<Point> end_;
    std::vector<Point> direction_;
};

// Enumerates diffracted branches: up to max_bounces hits, consecutive walls distinct,
// |m| <= max_order with |m| lambda/p < 2, at least one m != 0. Sorted by (length,
// wall sequence, order sequence). Throws ConfigError past limits.max_branches.
std::vector<DiffractedBranchTracer::Branch> enumerate_diffracted_branches(const GratingSpec &spec,
                                                                          double wavelength,
                                                                          const PathTraceLimits &limits);

} // namespace gratewave
