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

#include "gratewave/greens.hpp"
#include "gratewave/beam_trace.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gratewave
{

std::string wall_tag(const WallModel &wall)
{
    struct Visitor
    {
        std::string operator()(const FreeSpace &) const { return "free_space"; }
        std::string operator()(const PecWalls &) const { return "pec"; }
        std::string operator()(const DrywallWalls &) const { return "drywall"; }
        std::string operator()(const GratingWalls &) const { return "grating"; }
    };
    return std::visit(Visitor{}, wall);
}

void PathTraceLimits::validate() const
{
    if (max_bounces < 0)
        throw ConfigError("limits.max_bounces must be >= 0");
    if (max_image_order < 0)
        throw ConfigError("limits.max_image_order must be >= 0");
    if (!(artificial_loss >= 0.0))
        throw ConfigError("limits.artificial_loss must be >= 0");
    if (fan_samples < 16)
        throw ConfigError("limits.fan_samples must be >= 16");
    if (max_branches < 1)
        throw ConfigError("limits.max_branches must be >= 1");
}

Complex free_space_kernel(double rho, double k0, double loss)
{
    const Complex h = specfun::hankel2_0(k0 * rho);
    const Complex g = Complex{0.0, 0.25} * h;
    return loss > 0.0 ? g * std::exp(-k0 * loss * rho) : g;
}

Complex greens_free_space(Point obs, Point src, double k0)
{
    const double rho = distance(obs, src);
    if (rho == 0.0)
        throw SingularityError("Green's function evaluated at its source point");
    return free_space_kernel(rho, k0);
}

Complex efield_factor(const RoomGeometry &room)
{
    return {0.0, room.omega() * constants::mu0};
}

Complex efield_line_source(Point obs, Point src, const RoomGeometry &room, double current)
{
    return current * efield_factor(room) * greens_free_space(obs, src, room.k0());
}

double image_coordinate(int n, double s, double len)
{
    return (n % 2 == 0) ? double(n) * len + s : double(n + 1) * len - s;
}

namespace
{

void require_inside(Point p, const RoomGeometry &room, const char *what)
{
    if (!room.contains_strictly(p))
        throw DomainError(std::string(what) + " must lie strictly inside the room");
}

int parity_sign(int n) { return (std::abs(n) % 2 == 0) ? 1 : -1; }

} // namespace

std::vector<ImageSource> pec_image_set(Point src, const RoomGeometry &room, int max_order)
{
    require_inside(src, room, "source");
    if (max_order < 0)
        throw DomainError("pec_image_set: max_order must be >= 0");
    std::vector<ImageSource> out;
    for (int total = 1; total <= 2 * max_order; ++total)
        for (int nx = -max_order; nx <= max_order; ++nx)
        {
            const int rest = total - std::abs(nx);
            if (rest < 0 || rest > max_order)
                continue;
            for (int ny : {-rest, rest})
            {
                out.push_back({{image_coordinate(nx, src.x, room.length_x),
                                image_coordinate(ny, src.y, room.length_y)},
                               parity_sign(nx) * parity_sign(ny),
                               nx,
                               ny});
                if (rest == 0)
                    break;
            }
        }
    return out;
}

std::vector<Complex> pec_shell_sums(Point obs, Point src, const RoomGeometry &room,
                                    const PathTraceLimits &limits)
{
    require_inside(src, room, "source");
    require_inside(obs, room, "observation point");
    if (obs == src)
        throw SingularityError("Green's function evaluated at its source point");

    const int n_max = limits.max_image_order;
    const double k0 = room.k0();
    const double loss = limits.artificial_loss;

    std::vector<double> xs(2 * n_max + 1), ys(2 * n_max + 1);
    for (int n = -n_max; n <= n_max; ++n)
    {
        xs[n + n_max] = image_coordinate(n, src.x, room.length_x) - obs.x;
        ys[n + n_max] = image_coordinate(n, src.y, room.length_y) - obs.y;
    }
    auto term = [&](int nx, int ny) {
        const double rho = std::hypot(xs[nx + n_max], ys[ny + n_max]);
        return double(parity_sign(nx) * parity_sign(ny)) * free_space_kernel(rho, k0, loss);
    };

    std::vector<Complex> sums;
    sums.reserve(n_max + 1);
    Complex acc = term(0, 0);
    sums.push_back(acc);
    for (int s = 1; s <= n_max; ++s)
    {
        // Shell max(|nx|, |ny|) = s in a fixed order: the two rows ny = -s, +s,
        // then the two columns nx = -s, +s without their corners.
        Complex shell{0.0, 0.0};
        for (int ny : {-s, s})
            for (int nx = -s; nx <= s; ++nx)
                shell += term(nx, ny);
        for (int nx : {-s, s})
            for (int ny = -s + 1; ny <= s - 1; ++ny)
                shell += term(nx, ny);
        acc += shell;
        sums.push_back(acc);
    }
    return sums;
}

Complex wynn_epsilon(const std::vector<Complex> &partial_sums)
{
    if (partial_sums.empty())
        return {0.0, 0.0};
    // eps_{k+1}^{(n)} = eps_{k-1}^{(n+1)} + 1 / (eps_k^{(n+1)} - eps_k^{(n)})
    std::vector<Complex> prev(partial_sums.size() + 1, Complex{0.0, 0.0});
    std::vector<Complex> cur = partial_sums;
    Complex best = partial_sums.back();
    for (int order = 1; cur.size() > 1; ++order)
    {
        std::vector<Complex> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i)
        {
            const Complex d = cur[i + 1] - cur[i];
            const bool even_column = (order % 2 == 1);
            if (d == Complex{0.0, 0.0} ||
                (even_column && std::abs(d) <= 1e-15 * std::abs(cur[i + 1])))
                return best; // converged to rounding level
            next[i] = prev[i + 1] + 1.0 / d;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (order % 2 == 0)
        {
            if (!std::isfinite(cur.back().real()) || !std::isfinite(cur.back().imag()))
                return best;
            best = cur.back();
        }
    }
    return best;
}

Complex greens_pec(Point obs, Point src, const RoomGeometry &room, const PathTraceLimits &limits)
{
    const auto sums = pec_shell_sums(obs, src, room, limits);
    return limits.accelerate ? wynn_epsilon(sums) : sums.back();
}

Complex specular_path_sum(Point obs, Point src, const RoomGeometry &room, const PathTraceLimits &limits,
                          const ReflectionFn &reflection)
{
    require_inside(src, room, "source");
    require_inside(obs, room, "observation point");
    if (obs == src)
        throw SingularityError("Green's function evaluated at its source point");

    const double k0 = room.k0();
    Complex total = free_space_kernel(distance(obs, src), k0);
    const int cap = std::min(limits.max_bounces, 2 * limits.max_image_order);
    for (int bounces = 1; bounces <= cap; ++bounces)
        for (int nx = -bounces; nx <= bounces; ++nx)
        {
            const int rest = bounces - std::abs(nx);
            if (std::abs(nx) > limits.max_image_order || rest > limits.max_image_order)
                continue;
            for (int ny : {-rest, rest})
            {
                const double dx = obs.x - image_coordinate(nx, src.x, room.length_x);
                const double dy = obs.y - image_coordinate(ny, src.y, room.length_y);
                const double rho = std::hypot(dx, dy);
                Complex weight{1.0, 0.0};
                if (nx != 0)
                {
                    const Complex r = reflection(std::atan2(std::abs(dy), std::abs(dx)));
                    for (int i = 0; i < std::abs(nx); ++i)
                        weight *= r;
                }
                if (rest != 0)
                {
                    const Complex r = reflection(std::atan2(std::abs(dx), std::abs(dy)));
                    for (int i = 0; i < rest; ++i)
                        weight *= r;
                }
                total += weight * free_space_kernel(rho, k0);
                if (rest == 0)
                    break;
            }
        }
    return total;
}

Complex greens_drywall(Point obs, Point src, const RoomGeometry &room, const DrywallMaterial &mat,
                       const PathTraceLimits &limits)
{
    return specular_path_sum(obs, src, room, limits,
                             [&](double theta) { return slab_reflection(theta, mat, room); });
}

Complex greens_grating(Point obs, Point src, const RoomGeometry &room, const GratingSpec &spec,
                       const PathTraceLimits &limits)
{
    const DiffractedBranchTracer tracer(room, spec, limits, src);
    return specular_path_sum(obs, src, room, limits,
                             [&](double theta) { return grating_coefficient(0, theta, spec, room); }) +
           tracer.sum(obs);
}

Complex greens(Point obs, Point src, const RoomGeometry &room, const WallModel &wall,
               const PathTraceLimits &limits)
{
    struct Visitor
    {
        Point obs, src;
        const RoomGeometry &room;
        const PathTraceLimits &limits;
        Complex operator()(const FreeSpace &) const { return greens_free_space(obs, src, room.k0()); }
        Complex operator()(const PecWalls &) const { return greens_pec(obs, src, room, limits); }
        Complex operator()(const DrywallWalls &w) const
        {
            return greens_drywall(obs, src, room, w.material, limits);
        }
        Complex operator()(const GratingWalls &w) const
        {
            return greens_grating(obs, src, room, w.spec, limits);
        }
    };
    return std::visit(Visitor{obs, src, room, limits}, wall);
}

GreensEvaluator::GreensEvaluator(const RoomGeometry &room, WallModel wall, PathTraceLimits limits,
                                 std::vector<Point> sources)
    : room_(room), wall_(std::move(wall)), limits_(limits), sources_(std::move(sources))
{
    room_.validate();
    limits_.validate();
    if (auto g = std::get_if<GratingWalls>(&wall_))
    {
        g->spec.validate(room_.wavelength());
        tracers_.reserve(sources_.size());
        for (const Point &s : sources_)
            tracers_.push_back(std::make_unique<DiffractedBranchTracer>(room_, g->spec, limits_, s));
    }
}

GreensEvaluator::~GreensEvaluator() = default;
GreensEvaluator::GreensEvaluator(GreensEvaluator &&) noexcept = default;
GreensEvaluator &GreensEvaluator::operator=(GreensEvaluator &&) noexcept = default;

Complex GreensEvaluator::green(Point obs, std::size_t source) const
{
    const Point src = sources_.at(source);
    if (auto g = std::get_if<GratingWalls>(&wall_))
    {
        const GratingSpec &spec = g->spec;
        const RoomGeometry &room = room_;
        return specular_path_sum(obs, src, room_, limits_,
                                 [&](double theta) { return grating_coefficient(0, theta, spec, room); }) +
               tracers_[source]->sum(obs);
    }
    return greens(obs, src, room_, wall_, limits_);
}

} // namespace gratewave
