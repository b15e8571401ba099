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

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gratewave
{

struct FreeSpace
{
};
struct PecWalls
{
};
struct DrywallWalls
{
    DrywallMaterial material;
};
struct GratingWalls
{
    GratingSpec spec;
};

// All four walls share one model.
using WallModel = std::variant<FreeSpace, PecWalls, DrywallWalls, GratingWalls>;

// "free_space", "pec", "drywall" or "grating".
std::string wall_tag(const WallModel &wall);

// Truncation of the image and path sums.
struct PathTraceLimits
{
    int max_bounces = 2;          // wall interactions per drywall/grating path
    int max_image_order = 40;     // cap on |n_x|, |n_y| (reflections per axis)
    double artificial_loss = 1e-3; // k -> k0 (1 - j loss) for the PEC series
    bool accelerate = true;       // Wynn-epsilon extrapolation of the PEC shell sums
    int fan_samples = 1024;       // launch angles per diffracted branch
    int max_branches = 20000;     // cap on diffracted branches per source

    void validate() const;
};

struct ImageSource
{
    Point position;
    int sign; // +1 or -1
    int nx;   // signed reflection index along x; |nx| = reflections on the x = const walls
    int ny;
};

// (j/4) H0^(2)(k0 |obs - src|). Throws SingularityError when obs == src.
Complex greens_free_space(Point obs, Point src, double k0);

// Free-space kernel evaluated at distance rho with an attenuation e^{-k0 loss rho}.
Complex free_space_kernel(double rho, double k0, double loss = 0.0);

// E_z = j omega mu0 I0 G0 = -(I0 k0^2 / (4 omega eps0)) H0^(2)(k0 rho).
Complex efield_line_source(Point obs, Point src, const RoomGeometry &room, double current);

// j omega mu0: converts a Green's function value into V/m per ampere.
Complex efield_factor(const RoomGeometry &room);

// Coordinate of the image with signed reflection index n along one axis of length len.
double image_coordinate(int n, double s, double len);

// Dirichlet image lattice with |nx|, |ny| <= max_order, excluding the source itself,
// ordered by (|nx| + |ny|, nx, ny). Throws DomainError unless src is strictly inside.
std::vector<ImageSource> pec_image_set(Point src, const RoomGeometry &room, int max_order);

// Partial sums of the PEC image series over square shells max(|nx|,|ny|) = 0..N.
std::vector<Complex> pec_shell_sums(Point obs, Point src, const RoomGeometry &room,
                                    const PathTraceLimits &limits);

// Wynn-epsilon limit estimate of a sequence of partial sums.
Complex wynn_epsilon(const std::vector<Complex> &partial_sums);

Complex greens_pec(Point obs, Point src, const RoomGeometry &room, const PathTraceLimits &limits);

// Reflection coefficient as a function of the local incidence angle.
using ReflectionFn = std::function<Complex(double theta)>;

// G0 plus every specular image path with at most limits.max_bounces wall hits.
// Each path is weighted by R(theta_x)^|nx| R(theta_y)^|ny| where theta_x, theta_y are the
// incidence angles of the unfolded path on the x- and y-walls.
Complex specular_path_sum(Point obs, Point src, const RoomGeometry &room, const PathTraceLimits &limits,
                          const ReflectionFn &reflection);

Complex greens_drywall(Point obs, Point src, const RoomGeometry &room, const DrywallMaterial &mat,
                       const PathTraceLimits &limits);

Complex greens_grating(Point obs, Point src, const RoomGeometry &room, const GratingSpec &spec,
                       const PathTraceLimits &limits);

// Green's function for any wall model.
Complex greens(Point obs, Point src, const RoomGeometry &room, const WallModel &wall,
               const PathTraceLimits &limits);

class DiffractedBranchTracer;

// Green's operator bound to a fixed set of sources. Per-source preprocessing (the
// diffracted ray fans of grating walls) happens once in the constructor; evaluation
// is const and safe to call concurrently.
class GreensEvaluator
{
public:
    GreensEvaluator(const RoomGeometry &room, WallModel wall, PathTraceLimits limits,
                    std::vector<Point> sources);
    ~GreensEvaluator();
    GreensEvaluator(GreensEvaluator &&) noexcept;
    GreensEvaluator &operator=(GreensEvaluator &&) noexcept;

    Complex green(Point obs, std::size_t source) const;
    // Field in V/m of a unit line current at the given source.
    Complex efield(Point obs, std::size_t source) const { return efield_factor(room_) * green(obs, source); }

    const std::vector<Point> &sources() const { return sources_; }
    const RoomGeometry &room() const { return room_; }
    const WallModel &wall() const { return wall_; }

private:
    RoomGeometry room_;
    WallModel wall_;
    PathTraceLimits limits_;
    std::vector<Point> sources_;
    std::vector<std::unique_ptr<DiffractedBranchTracer>> tracers_;
};

} // namespace gratewave
