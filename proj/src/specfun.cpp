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


#include "gratewave/specfun.hpp"
#include "gratewave/errors.hpp"

#include <cmath>
#include <numbers>

namespace gratewave::specfun
{
namespace
{

constexpr double kEulerGamma = 0.57721566490153286061;

// Ascending series J0 = sum (-x^2/4)^k / (k!)^2.
double j0_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k)
    {
        term *= -q / (double(k) * double(k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)))
            break;
    }
    return sum;
}

// Y0 = (2/pi) (ln(x/2) + gamma) J0 + (2/pi) sum_{k>=1} (-1)^{k+1} H_k (x^2/4)^k / (k!)^2
double y0_series(double x, double j0)
{
    const double q = 0.25 * x * x;
    double term = 1.0, harmonic = 0.0, sum = 0.0;
    for (int k = 1; k < 200; ++k)
    {
        term *= -q / (double(k) * double(k));
        harmonic += 1.0 / double(k);
        const double add = -term * harmonic;
        sum += add;
        if (std::abs(add) < 1e-17 * std::max(1.0, std::abs(sum)))
            break;
    }
    return (2.0 / std::numbers::pi) * ((std::log(0.5 * x) + kEulerGamma) * j0 + sum);
}

// Hankel asymptotic P(x), Q(x) for order zero, truncated at the smallest term.
void asymptotic_pq(double x, double &p, double &q)
{
    // a_k = prod_{i=1..k} (2i-1)^2 / (k! 8^k)
    p = 1.0;
    q = 0.0;
    double a = 1.0, prev = 1.0, xp = 1.0;
    for (int k = 1; k < 200; ++k)
    {
        a *= double(2 * k - 1) * double(2 * k - 1) / (8.0 * double(k));
        xp *= x;
        const double term = a / xp;
        if (term > prev || term < 1e-18)
            break;
        prev = term;
        // P = 1 - a2/x^2 + a4/x^4 - ...,  Q = -a1/x + a3/x^3 - ...
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1)
            q -= sign * term;
        else
            p += sign * term;
    }
}

} // namespace

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw DomainError("bessel_j0: non-finite argument");
    x = std::abs(x);
    if (x < kAsymptoticSwitch)
        return j0_series(x);
    double p, q;
    asymptotic_pq(x, p, q);
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_y0(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("bessel_y0: argument must be finite and > 0");
    if (x < kAsymptoticSwitch)
        return y0_series(x, j0_series(x));
    double p, q;
    asymptotic_pq(x, p, q);
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

Complex hankel2_0(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("hankel2_0: argument must be finite and > 0");
    if (x < kAsymptoticSwitch)
    {
        const double j0 = j0_series(x);
        return {j0, -y0_series(x, j0)};
    }
    // (P - jQ) e^{-j(x - pi/4)} sqrt(2/(pi x))
    double p, q;
    asymptotic_pq(x, p, q);
    const double chi = x - 0.25 * std::numbers::pi;
    const double c = std::cos(chi), s = std::sin(chi);
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    return {amp * (p * c - q * s), -amp * (p * s + q * c)};
}

double log_bessel_i0(double x)
{
    if (!std::isfinite(x) || x < 0.0)
        throw DomainError("log_bessel_i0: argument must be finite and >= 0");
    if (x < 20.0)
    {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 300; ++k)
        {
            term *= q / (double(k) * double(k));
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return std::log(sum);
    }
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k / x^k, all terms positive
    double a = 1.0, xp = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 1; k < 200; ++k)
    {
        a *= double(2 * k - 1) * double(2 * k - 1) / (8.0 * double(k));
        xp *= x;
        const double term = a / xp;
        if (term > prev || term < 1e-18)
            break;
        prev = term;
        sum += term;
    }
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

} // namespace gratewave::specfun
