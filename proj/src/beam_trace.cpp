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

#include "gratewave/beam_trace.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gratewave
{
namespace
{

constexpr int kBisectionSteps = 60;

} // namespace

std::vector<DiffractedBranchTracer::Branch> enumerate_diffracted_branches(const GratingSpec &spec,
                                                                          double wavelength,
                                                                          const PathTraceLimits &limits)
{
    std::vector<int> orders;
    for (int m = -spec.max_order; m <= spec.max_order; ++m)
        if (std::abs(double(m)) * wavelength / spec.period < 2.0)
            orders.push_back(m);

    std::vector<DiffractedBranchTracer::Branch> out;
    if (orders.size() < 2)
        return out; // only the specular order can propagate

    for (int n = 1; n <= limits.max_bounces; ++n)
    {
        // Wall sequences, lexicographic, consecutive entries distinct.
        std::vector<std::vector<int>> wall_seqs{{}};
        for (int l = 0; l < n; ++l)
        {
            std::vector<std::vector<int>> grown;
            for (const auto &seq : wall_seqs)
                for (int w = 0; w < 4; ++w)
                    if (seq.empty() || seq.back() != w)
                    {
                        auto s = seq;
                        s.push_back(w);
                        grown.push_back(std::move(s));
                    }
            wall_seqs = std::move(grown);
        }
        for (const auto &walls : wall_seqs)
        {
            std::vector<std::size_t> idx(n, 0);
            while (true)
            {
                DiffractedBranchTracer::Branch b{walls, std::vector<int>(n)};
                bool any_nonzero = false;
                for (int l = 0; l < n; ++l)
                {
                    b.orders[l] = orders[idx[l]];
                    any_nonzero |= (b.orders[l] != 0);
                }
                if (any_nonzero)
                {
                    out.push_back(std::move(b));
                    if (int(out.size()) > limits.max_branches)
                        throw ConfigError("grating beam trace exceeds limits.max_branches (" +
                                          std::to_string(limits.max_branches) + ")");
                }
                int l = n - 1;
                while (l >= 0 && ++idx[l] == orders.size())
                    idx[l--] = 0;
                if (l < 0)
                    break;
            }
        }
    }
    return out;
}

DiffractedBranchTracer::DiffractedBranchTracer(const RoomGeometry &room, const GratingSpec &spec,
                                               const PathTraceLimits &limits, Point source)
    : room_(room), spec_(spec), limits_(limits), source_(source), wavelength_(room.wavelength()),
      walls_(wall_lines(room))
{
    if (!room.contains_strictly(source))
        throw DomainError("source must lie strictly inside the room");
    branches_ = enumerate_diffracted_branches(spec, wavelength_, limits);

    const std::size_t fan = std::size_t(limits.fan_samples);
    valid_.assign(branches_.size() * fan, 0);
    end_.resize(branches_.size() * fan);
    direction_.resize(branches_.size() * fan);
    Ray ray;
    for (std::size_t b = 0; b < branches_.size(); ++b)
        for (std::size_t k = 0; k < fan; ++k)
        {
            const double phi = 2.0 * std::numbers::pi * (double(k) + 0.5) / double(fan);
            if (trace(branches_[b], phi, ray))
            {
                valid_[b * fan + k] = 1;
                end_[b * fan + k] = ray.end;
                direction_[b * fan + k] = ray.direction;
            }
        }
}

bool DiffractedBranchTracer::trace(const Branch &branch, double launch_angle, Ray &ray) const
{
    Point pos = source_;
    Point dir{std::cos(launch_angle), std::sin(launch_angle)};
    int on_wall = -1;
    ray.length = 0.0;
    ray.hits.clear();
    for (std::size_t l = 0; l < branch.walls.size(); ++l)
    {
        // Nearest wall ahead of the ray.
        int hit_wall = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int w = 0; w < 4; ++w)
        {
            if (w == on_wall)
                continue;
            const WallLine &wl = walls_[w];
            const double approach = dot(dir, wl.inward_normal);
            if (approach >= 0.0)
                continue;
            const double t = dot(wl.origin - pos, wl.inward_normal) / approach;
            if (t > 0.0 && t < best)
            {
                best = t;
                hit_wall = w;
            }
        }
        if (hit_wall != branch.walls[l])
            return false;
        const WallLine &wl = walls_[hit_wall];
        const Point hit = pos + best * dir;
        const double along = dot(hit - wl.origin, wl.tangent);
        if (along < 0.0 || along > wl.length)
            return false;

        const double sin_i = dot(dir, wl.tangent);
        double sin_m = 0.0;
        if (!order_propagates(sin_i, branch.orders[l], spec_.period, wavelength_, sin_m))
            return false;
        const double cos_m = std::sqrt(1.0 - sin_m * sin_m);
        ray.length += best;
        ray.hits.push_back({hit_wall, along, sin_i});
        dir = sin_m * wl.tangent + cos_m * wl.inward_normal;
        pos = hit;
        on_wall = hit_wall;
    }
    ray.end = pos;
    ray.direction = dir;
    return true;
}

Complex DiffractedBranchTracer::contribution(const Ray &ray, const Branch &branch, Point obs) const
{
    Complex weight{1.0, 0.0};
    for (std::size_t l = 0; l < ray.hits.size(); ++l)
    {
        const Hit &h = ray.hits[l];
        const int m = branch.orders[l];
        const double theta = std::asin(std::clamp(h.sin_theta, -1.0, 1.0));
        weight *= grating_coefficient(m, theta, spec_, room_);
        if (m != 0)
        {
            const double phase = 2.0 * std::numbers::pi * double(m) * h.along / spec_.period;
            weight *= Complex{std::cos(phase), std::sin(phase)};
        }
    }
    const double path = ray.length + distance(ray.end, obs);
    return weight * free_space_kernel(path, room_.k0());
}

Complex DiffractedBranchTracer::sum(Point obs) const
{
    if (!room_.contains_strictly(obs))
        throw DomainError("observation point must lie strictly inside the room");
    Complex total{0.0, 0.0};
    for (std::size_t b = 0; b < branches_.size(); ++b)
        total += branch_sum(b, obs);
    return total;
}

Complex DiffractedBranchTracer::branch_sum(std::size_t b, Point obs) const
{
    const std::size_t fan = std::size_t(limits_.fan_samples);
    const double step = 2.0 * std::numbers::pi / double(fan);
    const std::size_t base = b * fan;
    const Branch &branch = branches_.at(b);
    Complex total{0.0, 0.0};
    Ray ray;
    // Signed offset of obs from the fan ray k; false if obs is behind the ray end.
    auto offset = [&](std::size_t k, double &side) {
        const Point rel = obs - end_[base + k];
        side = cross(direction_[base + k], rel);
        return dot(direction_[base + k], rel) > 0.0;
    };
    for (std::size_t k = 0; k < fan; ++k)
    {
        const std::size_t k2 = (k + 1) % fan;
        if (!valid_[base + k] || !valid_[base + k2])
            continue;
        double f1 = 0.0, f2 = 0.0;
        if (!offset(k, f1) || !offset(k2, f2) || ((f1 > 0.0) == (f2 > 0.0)))
            continue;

        double lo = 2.0 * std::numbers::pi * (double(k) + 0.5) / double(fan);
        double hi = lo + step;
        bool ok = true;
        for (int it = 0; it < kBisectionSteps; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            if (!trace(branch, mid, ray))
            {
                ok = false;
                break;
            }
            const double fm = cross(ray.direction, obs - ray.end);
            if ((fm > 0.0) == (f1 > 0.0))
                lo = mid;
            else
                hi = mid;
        }
        if (!ok || !trace(branch, 0.5 * (lo + hi), ray))
            continue;
        if (dot(ray.direction, obs - ray.end) <= 0.0)
            continue;
        total += contribution(ray, branch, obs);
    }
    return total;
}

} // namespace gratewave
