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

#include "gratewave/mimo.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gratewave
{
namespace
{

constexpr double kOffTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

} // namespace

// One-sided Hestenes-Jacobi: orthogonalise the columns of A (m x n, n <= m) by plane
// rotations; the column norms converge to the singular values.
std::vector<double> singular_values(const ChannelMatrix &h)
{
    const bool transpose = h.n_tx > h.n_rx;
    const int m = transpose ? h.n_tx : h.n_rx;
    const int n = transpose ? h.n_rx : h.n_tx;
    std::vector<std::vector<Complex>> cols(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(m)));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            cols[j][i] = transpose ? std::conj(h(j, i)) : h(i, j);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep)
    {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
            {
                auto &ap = cols[p];
                auto &aq = cols[q];
                double alpha = 0.0, beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (int i = 0; i < m; ++i)
                {
                    alpha += std::norm(ap[i]);
                    beta += std::norm(aq[i]);
                    gamma += std::conj(ap[i]) * aq[i];
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= kOffTolerance * std::sqrt(alpha * beta))
                    continue;
                off = std::max(off, g / std::sqrt(alpha * beta));

                const Complex phase = std::conj(gamma) / g; // e^{-j arg gamma}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < m; ++i)
                {
                    const Complex x = ap[i];
                    const Complex y = aq[i] * phase;
                    ap[i] = c * x - s * y;
                    aq[i] = s * x + c * y;
                }
            }
        if (off < kOffTolerance)
            break;
    }

    std::vector<double> sv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
    {
        double acc = 0.0;
        for (int i = 0; i < m; ++i)
            acc += std::norm(cols[j][i]);
        sv[j] = std::sqrt(acc);
    }
    std::stable_sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

void PowerBudget::validate() const
{
    if (!(p_tx > 0.0) || !std::isfinite(p_tx))
        throw ValidationError("budget.p_tx", "must be positive");
    if (!(p_noise > 0.0) || !std::isfinite(p_noise))
        throw ValidationError("budget.p_noise", "must be positive");
}

WaterfillResult waterfill(const std::vector<double> &sv, const PowerBudget &budget, int n_tx)
{
    if (n_tx < 1)
        throw DomainError("waterfill: n_tx must be at least 1");
    budget.validate();
    const std::size_t n = sv.size();
    WaterfillResult out;
    out.gammas.assign(n, 0.0);
    if (n == 0)
        return out;

    // Mode gains a_i; modes ordered by descending gain, ties by lower index.
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(sv[i] >= 0.0) || !std::isfinite(sv[i]))
            throw DomainError("waterfill: singular values must be finite and nonnegative");
        a[i] = budget.p_tx * sv[i] * sv[i] / (double(n_tx) * budget.p_noise);
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x] > a[y]; });

    std::size_t usable = 0;
    while (usable < n && a[order[usable]] > 0.0)
        ++usable;
    if (usable == 0)
    {
        std::fill(out.gammas.begin(), out.gammas.end(), double(n_tx) / double(n));
        return out;
    }

    // Largest k whose weakest mode stays above the water level.
    double inv_sum = 0.0;
    std::vector<double> prefix(usable + 1, 0.0);
    for (std::size_t k = 0; k < usable; ++k)
        prefix[k + 1] = prefix[k] + 1.0 / a[order[k]];
    std::size_t k = usable;
    double mu = 0.0;
    for (; k >= 1; --k)
    {
        inv_sum = prefix[k];
        mu = (double(n_tx) + inv_sum) / double(k);
        if (mu - 1.0 / a[order[k - 1]] > 0.0)
            break;
    }
    out.water_level = mu;
    for (std::size_t i = 0; i < k; ++i)
    {
        const std::size_t idx = order[i];
        out.gammas[idx] = mu - 1.0 / a[idx];
        out.capacity += std::log2(1.0 + out.gammas[idx] * a[idx]);
    }
    return out;
}

CapacityResult capacity(const ChannelMatrix &h, const PowerBudget &budget)
{
    CapacityResult out;
    out.singular_values = singular_values(h);
    const WaterfillResult wf = waterfill(out.singular_values, budget, h.n_tx);
    out.gammas = wf.gammas;
    out.capacity = wf.capacity;
    const double thr = useful_mode_threshold(h.n_tx);
    for (double g : out.gammas)
        out.useful_modes += g > thr ? 1 : 0;
    const double smax = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    const double tol = double(std::max(h.n_rx, h.n_tx)) * 1e-14 * smax;
    for (double s : out.singular_values)
        out.rank += (s > tol && s > 0.0) ? 1 : 0;
    return out;
}

ChannelMatrix build_channel_matrix(const GreensEvaluator &tx, const std::vector<Point> &rx)
{
    ChannelMatrix h(int(rx.size()), int(tx.sources().size()));
    for (int i = 0; i < h.n_rx; ++i)
        for (int j = 0; j < h.n_tx; ++j)
            h(i, j) = tx.efield(rx[std::size_t(i)], std::size_t(j));
    return h;
}

ChannelMatrix build_channel_matrix(const ArrayLayout &tx, const ArrayLayout &rx, const RoomGeometry &room,
                                   const WallModel &wall, const PathTraceLimits &limits)
{
    const GreensEvaluator eval(room, wall, limits, tx.element_positions());
    return build_channel_matrix(eval, rx.element_positions());
}

namespace
{

bool rx_guarded(const std::vector<Point> &rx, const GreensEvaluator &tx)
{
    return std::any_of(rx.begin(), rx.end(), [&](Point p) { return guarded(p, tx); });
}

} // namespace

CapacityGrid capacity_map(const GreensEvaluator &tx, const ArrayLayout &rx, const PowerBudget &budget,
                          const SamplingGrid &grid, const Execution &exec)
{
    budget.validate();
    CapacityGrid out{grid, std::vector<double>(grid.size(), 0.0), std::vector<std::uint8_t>(grid.size(), 0)};
    sweep(grid.size(), exec, [&](std::size_t i) {
        const auto elements = rx.translated_to(grid.point(i)).element_positions();
        if (rx_guarded(elements, tx))
        {
            out.masked[i] = 1;
            return;
        }
        out.values[i] = capacity(build_channel_matrix(tx, elements), budget).capacity;
    });
    return out;
}

CapacityImprovement capacity_improvement(const CapacityGrid &wall, const CapacityGrid &free_space)
{
    if (!(wall.grid == free_space.grid) || wall.values.size() != free_space.values.size())
        throw std::invalid_argument("capacity_improvement: grids are not congruent");
    CapacityImprovement out;
    out.delta.assign(wall.values.size(), 0.0);
    out.masked.assign(wall.values.size(), 0);
    double acc = 0.0;
    for (std::size_t i = 0; i < wall.values.size(); ++i)
    {
        if (wall.masked[i] || free_space.masked[i] || !(free_space.values[i] > 0.0))
        {
            out.masked[i] = 1;
            continue;
        }
        out.delta[i] = (wall.values[i] - free_space.values[i]) / free_space.values[i];
        acc += out.delta[i];
        ++out.count;
    }
    out.mean = out.count ? acc / double(out.count) : 0.0;
    return out;
}

std::vector<DistanceSample> capacity_vs_distance(const GreensEvaluator &tx, Point tx_center, const ArrayLayout &rx,
                                                 const PowerBudget &budget, double theta_tr,
                                                 const std::vector<double> &distances, const Execution &exec)
{
    budget.validate();
    std::vector<DistanceSample> out(distances.size());
    const Point dir{std::cos(theta_tr), std::sin(theta_tr)};
    sweep(distances.size(), exec, [&](std::size_t i) {
        out[i].distance = distances[i];
        const auto elements = rx.translated_to(tx_center + distances[i] * dir).element_positions();
        if (rx_guarded(elements, tx))
        {
            out[i].masked = true;
            return;
        }
        out[i].detail = capacity(build_channel_matrix(tx, elements), budget);
        out[i].capacity = out[i].detail.capacity;
    });
    return out;
}

std::vector<ModeSample> mode_analysis(const GreensEvaluator &tx, Point tx_center, const ArrayLayout &rx,
                                      const PowerBudget &budget, double theta_tr,
                                      const std::vector<double> &distances, const Execution &exec)
{
    const auto curve = capacity_vs_distance(tx, tx_center, rx, budget, theta_tr, distances, exec);
    std::vector<ModeSample> out(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
    {
        out[i].distance = curve[i].distance;
        out[i].masked = curve[i].masked;
        if (curve[i].masked)
            continue;
        const auto &sv = curve[i].detail.singular_values;
        const double s1 = sv.empty() ? 0.0 : sv.front();
        for (double s : sv)
            out[i].normalized_sigmas.push_back(s1 > 0.0 ? s / s1 : 0.0);
        out[i].gammas = curve[i].detail.gammas;
        out[i].useful_modes = curve[i].detail.useful_modes;
    }
    return out;
}

} // namespace gratewave
