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

#include "gratewave/stats.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace gratewave
{
namespace
{

constexpr int kMaxSweeps = 500;
constexpr double kTolerance = 1e-8;
constexpr std::size_t kMinSamples = 100;
constexpr double kGolden = 0.6180339887498949;

void require_params(bool ok, const char *what)
{
    if (!ok)
        throw DomainError(what);
}

// Per-sample quantities reused by every likelihood evaluation.
struct SampleCache
{
    std::vector<double> r;
    std::vector<double> r2;
    double sum_log_r = 0.0;
    double sum_r2 = 0.0;
    double mean_r2 = 0.0;
    double mean_r4 = 0.0;

    explicit SampleCache(const std::vector<double> &samples)
    {
        if (samples.size() < kMinSamples)
            throw DomainError("fading fit needs at least 100 samples");
        r.reserve(samples.size());
        r2.reserve(samples.size());
        for (double v : samples)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError("fading fit needs positive finite samples");
            r.push_back(v);
            r2.push_back(v * v);
            sum_log_r += std::log(v);
            sum_r2 += v * v;
            mean_r4 += v * v * v * v;
        }
        mean_r2 = sum_r2 / double(r.size());
        mean_r4 /= double(r.size());
    }
};

double rician_loglik(const SampleCache &c, double s, double sigma)
{
    const double s2 = 2.0 * sigma * sigma;
    const double inv_sig2 = 1.0 / (sigma * sigma);
    double acc = 0.0;
    for (double r : c.r)
        acc += specfun::log_bessel_i0(r * s * inv_sig2);
    const double n = double(c.r.size());
    return acc + c.sum_log_r - n * std::log(sigma * sigma) - (c.sum_r2 + n * s * s) / s2;
}

double hoyt_loglik(const SampleCache &c, double q, double omega)
{
    const double q2 = q * q;
    const double a = (1.0 + q2) * (1.0 + q2) / (4.0 * q2 * omega);
    const double b = (1.0 - q2 * q2) / (4.0 * q2 * omega);
    double acc = 0.0;
    for (double r2 : c.r2)
        acc += specfun::log_bessel_i0(b * r2);
    const double n = double(c.r.size());
    return acc + c.sum_log_r + n * (std::log(1.0 + q2) - std::log(q) - std::log(omega)) - a * c.sum_r2;
}

struct Coordinate
{
    double value;
    double lo;
    double hi;
    double step;
};

// Golden-section minimum of f on [a, b].
double golden_section(const std::function<double(double)> &f, double a, double b, double tol)
{
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol)
    {
        if (f1 <= f2)
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        }
        else
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

// Deterministic coordinate search minimising f over a box. Returns the sweep count.
int coordinate_search(const std::function<double(const std::array<double, 2> &)> &f, std::array<Coordinate, 2> &x,
                      bool &bounded, const char *model)
{
    std::array<double, 2> point{x[0].value, x[1].value};
    double best = f(point);
    for (int sweep = 1; sweep <= kMaxSweeps; ++sweep)
    {
        bool converged = true;
        for (std::size_t i = 0; i < 2; ++i)
        {
            Coordinate &c = x[i];
            const double tol = kTolerance * (1.0 + std::abs(c.value));
            const double a = std::max(c.lo, c.value - c.step);
            const double b = std::min(c.hi, c.value + c.step);
            auto line = [&](double v) {
                std::array<double, 2> p = point;
                p[i] = v;
                return f(p);
            };
            const double cand = golden_section(line, a, b, tol);
            const double fc = line(cand);
            const double old = c.value;
            if (fc < best)
            {
                best = fc;
                c.value = cand;
                point[i] = cand;
            }
            const double moved = std::abs(c.value - old);
            const bool at_edge = (c.value - a < 2.0 * tol && a > c.lo) || (b - c.value < 2.0 * tol && b < c.hi);
            if (at_edge)
                c.step *= 4.0; // minimum lies beyond the bracket
            else
                c.step = std::clamp(4.0 * moved, 64.0 * tol, 1.0);
            if (moved > tol || at_edge)
                converged = false;
        }
        if (converged)
        {
            bounded = false;
            for (const Coordinate &c : x)
            {
                const double tol = 1e-6 * (1.0 + std::abs(c.value));
                bounded = bounded || c.value - c.lo < tol || c.hi - c.value < tol;
            }
            return sweep;
        }
    }
    std::ostringstream msg;
    msg << model << " fit did not converge in " << kMaxSweeps << " sweeps (last point " << x[0].value << ", "
        << x[1].value << ", objective " << best << ")";
    throw ConvergenceError(msg.str());
}

constexpr double kLogKMin = -18.420680743952367; // ln 1e-8
constexpr double kLogKMax = 18.420680743952367;  // ln 1e8
constexpr double kQMin = 1e-4;

} // namespace

const char *model_name(FadingModel model) { return model == FadingModel::rician ? "rician" : "hoyt"; }

std::vector<double> ring_ensemble(const FieldGrid &field, Point center, double r_min, double r_max)
{
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw DomainError("ring_ensemble: need r_max > r_min > 0");
    std::vector<double> out;
    for (std::size_t i = 0; i < field.values.size(); ++i)
    {
        if (field.masked[i])
            continue;
        const double r = distance(field.grid.point(i), center);
        if (r >= r_min && r <= r_max)
            out.push_back(std::abs(field.values[i]));
    }
    if (out.empty())
        throw DomainError("ring_ensemble: annulus contains no unmasked samples");
    return out;
}

EnvelopeEnsemble rms_normalize(const std::vector<double> &samples)
{
    if (samples.empty())
        throw DomainError("rms_normalize: empty sample list");
    double acc = 0.0;
    for (double v : samples)
    {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw DomainError("rms_normalize: samples must be finite and nonnegative");
        acc += v * v;
    }
    if (acc == 0.0)
        throw DomainError("rms_normalize: all samples are zero");
    const double rms = std::sqrt(acc / double(samples.size()));
    EnvelopeEnsemble out;
    out.samples.reserve(samples.size());
    for (double v : samples)
        out.samples.push_back(v / rms);
    return out;
}

EnvelopeEnsemble pool_ensembles(const std::vector<EnvelopeEnsemble> &parts)
{
    EnvelopeEnsemble out;
    for (const auto &p : parts)
    {
        out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
        if (out.wall.empty())
            out.wall = p.wall;
        out.r_min = p.r_min;
        out.r_max = p.r_max;
    }
    return out;
}

EmpiricalPdf empirical_pdf(const EnvelopeEnsemble &ens, int bins)
{
    if (bins < 2)
        throw DomainError("empirical_pdf: need at least 2 bins");
    if (ens.samples.empty())
        throw DomainError("empirical_pdf: empty ensemble");
    const auto [lo_it, hi_it] = std::minmax_element(ens.samples.begin(), ens.samples.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo))
        throw DomainError("empirical_pdf: samples span a degenerate range");

    EmpiricalPdf out;
    out.bin_count = bins;
    out.n_samples = ens.samples.size();
    const double width = (hi - lo) / double(bins);
    out.bin_edges.resize(std::size_t(bins) + 1);
    for (int j = 0; j <= bins; ++j)
        out.bin_edges[j] = lo + double(j) * width;
    out.bin_edges.back() = hi;

    std::vector<std::size_t> counts(std::size_t(bins), 0);
    for (double v : ens.samples)
        ++counts[std::min(std::size_t(bins) - 1, std::size_t((v - lo) / width))];
    out.densities.resize(std::size_t(bins));
    for (int j = 0; j < bins; ++j)
        out.densities[j] = double(counts[j]) / (double(out.n_samples) * width);

    // Freedman-Diaconis: h = 2 IQR N^{-1/3}.
    std::vector<double> sorted = ens.samples;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double p) {
        const double pos = p * double(sorted.size() - 1);
        const std::size_t i = std::size_t(pos);
        const double f = pos - double(i);
        return i + 1 < sorted.size() ? sorted[i] * (1.0 - f) + sorted[i + 1] * f : sorted[i];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double h = 2.0 * iqr / std::cbrt(double(sorted.size()));
    out.freedman_diaconis_bins = h > 0.0 ? std::max(1, int(std::ceil((hi - lo) / h))) : 1;
    return out;
}

double rician_log_pdf(double r, double s, double sigma)
{
    require_params(r >= 0.0 && s >= 0.0 && sigma > 0.0 && std::isfinite(r) && std::isfinite(s) && std::isfinite(sigma),
                   "rician_pdf: need r >= 0, s >= 0, sigma > 0");
    if (r == 0.0)
        return -std::numeric_limits<double>::infinity();
    const double v = sigma * sigma;
    return std::log(r / v) - (r * r + s * s) / (2.0 * v) + specfun::log_bessel_i0(r * s / v);
}

double hoyt_log_pdf(double r, double q, double omega)
{
    require_params(r >= 0.0 && q > 0.0 && q <= 1.0 && omega > 0.0 && std::isfinite(r) && std::isfinite(omega),
                   "hoyt_pdf: need r >= 0, 0 < q <= 1, omega > 0");
    if (r == 0.0)
        return -std::numeric_limits<double>::infinity();
    const double q2 = q * q;
    const double r2 = r * r;
    return std::log((1.0 + q2) * r / (q * omega)) - (1.0 + q2) * (1.0 + q2) * r2 / (4.0 * q2 * omega) +
           specfun::log_bessel_i0((1.0 - q2 * q2) * r2 / (4.0 * q2 * omega));
}

double rician_pdf(double r, double s, double sigma) { return std::exp(rician_log_pdf(r, s, sigma)); }

double hoyt_pdf(double r, double q, double omega) { return std::exp(hoyt_log_pdf(r, q, omega)); }

// Parameters (ln K, ln Omega), with s^2 = K Omega / (K + 1), 2 sigma^2 = Omega / (K + 1).
FadingFit fit_rician(const EnvelopeEnsemble &ens)
{
    const SampleCache c(ens.samples);
    // Moment start: (E r^4 - Omega^2) / Omega^2 = (1 + 2K) / (1 + K)^2.
    const double omega0 = c.mean_r2;
    const double g = std::clamp(c.mean_r4 / (omega0 * omega0) - 1.0, 1e-12, 1.0);
    const double k0 = g >= 1.0 ? 1e-6 : (1.0 - g + std::sqrt(1.0 - g)) / g;
    const double lnk0 = std::clamp(std::log(std::max(k0, 1e-6)), kLogKMin, kLogKMax);

    auto params = [](const std::array<double, 2> &p, double &s, double &sigma) {
        const double k = std::exp(p[0]), om = std::exp(p[1]);
        s = std::sqrt(k * om / (k + 1.0));
        sigma = std::sqrt(0.5 * om / (k + 1.0));
    };
    auto objective = [&](const std::array<double, 2> &p) {
        double s, sigma;
        params(p, s, sigma);
        return -rician_loglik(c, s, sigma);
    };
    const double lnom = std::log(omega0);
    std::array<Coordinate, 2> x{Coordinate{lnk0, kLogKMin, kLogKMax, 0.5},
                                Coordinate{lnom, lnom - 5.0, lnom + 5.0, 0.05}};
    FadingFit fit;
    fit.model = FadingModel::rician;
    fit.sweeps = coordinate_search(objective, x, fit.bounded, "rician");
    params({x[0].value, x[1].value}, fit.s, fit.sigma);
    fit.k_factor = std::exp(x[0].value);
    fit.omega = std::exp(x[1].value);
    fit.log_likelihood = rician_loglik(c, fit.s, fit.sigma);
    return fit;
}

// Parameters (q, ln Omega).
FadingFit fit_hoyt(const EnvelopeEnsemble &ens)
{
    const SampleCache c(ens.samples);
    // Moment start: E r^4 / Omega^2 = 2 + ((1 - q^2) / (1 + q^2))^2.
    const double omega0 = c.mean_r2;
    const double u = std::sqrt(std::clamp(c.mean_r4 / (omega0 * omega0) - 2.0, 0.0, 0.98));
    const double q0 = std::clamp(std::sqrt((1.0 - u) / (1.0 + u)), kQMin, 1.0);

    auto objective = [&](const std::array<double, 2> &p) { return -hoyt_loglik(c, p[0], std::exp(p[1])); };
    const double lnom = std::log(omega0);
    std::array<Coordinate, 2> x{Coordinate{q0, kQMin, 1.0, 0.05}, Coordinate{lnom, lnom - 5.0, lnom + 5.0, 0.05}};
    FadingFit fit;
    fit.model = FadingModel::hoyt;
    fit.sweeps = coordinate_search(objective, x, fit.bounded, "hoyt");
    fit.q = x[0].value;
    fit.omega = std::exp(x[1].value);
    fit.log_likelihood = hoyt_loglik(c, fit.q, fit.omega);
    return fit;
}

ModelSelection select_model(const EnvelopeEnsemble &ens)
{
    ModelSelection out;
    out.rician = fit_rician(ens);
    out.hoyt = fit_hoyt(ens);
    out.selected = out.rician.log_likelihood >= out.hoyt.log_likelihood ? out.rician : out.hoyt;
    return out;
}

} // namespace gratewave
