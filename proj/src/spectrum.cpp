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

#include "gratewave/spectrum.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <fftw3.h>

namespace gratewave
{

ApertureSampling sample_aperture(const std::function<Complex(Point)> &field, Point start, Point end, int n,
                                 double wavelength)
{
    if (n < 2)
        throw DomainError("sample_aperture: need at least 2 samples");
    if (!(wavelength > 0.0))
        throw DomainError("sample_aperture: wavelength must be positive");
    ApertureSampling ap{start, end, n, {}};
    if (!(ap.spacing() > 0.0))
        throw ConfigError("aperture endpoints coincide");
    if (ap.spacing() > 0.5 * wavelength * (1.0 + 1e-12))
        throw ConfigError("aperture spacing exceeds half a wavelength");
    ap.samples.resize(std::size_t(n));
    for (int i = 0; i < n; ++i)
        ap.samples[i] = field(ap.position(i));
    return ap;
}

std::vector<Complex> aperture_dft(const std::vector<Complex> &samples, SpectrumWindow window, int zero_pad)
{
    if (zero_pad < 1)
        throw DomainError("zero_pad must be at least 1");
    const std::size_t n = samples.size();
    const std::size_t m = n * std::size_t(zero_pad);
    if (n == 0)
        return {};

    auto *buf = fftw_alloc_complex(m);
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> guard(buf, &fftw_free);
    for (std::size_t k = 0; k < m; ++k)
    {
        Complex v{0.0, 0.0};
        if (k < n)
        {
            double w = 1.0;
            if (window == SpectrumWindow::hann && n > 1)
                w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(k) / double(n - 1));
            v = w * samples[k];
        }
        buf[k][0] = v.real();
        buf[k][1] = v.imag();
    }
    fftw_plan plan;
#pragma omp critical(gratewave_fftw_planner)
    plan = fftw_plan_dft_1d(int(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
#pragma omp critical(gratewave_fftw_planner)
    fftw_destroy_plan(plan);

    std::vector<Complex> out(m);
    for (std::size_t k = 0; k < m; ++k)
        out[k] = {buf[k][0], buf[k][1]};
    return out;
}

AngularSpectrum angular_spectrum(const ApertureSampling &ap, double wavelength, SpectrumWindow window, int zero_pad)
{
    if (ap.samples.size() < 8)
        throw DomainError("angular_spectrum: need at least 8 samples");
    const auto bins = aperture_dft(ap.samples, window, zero_pad);
    const long m = long(bins.size());
    const double scale = wavelength / ap.spacing();

    // Signed bins -m/2+1 .. m/2-1; the unpaired Nyquist bin is dropped so the grid is
    // symmetric about zero.
    AngularSpectrum out;
    for (long l = -(m / 2) + (m % 2 == 0 ? 1 : 0); l <= (m - 1) / 2; ++l)
    {
        const double st = scale * double(l) / double(m);
        if (std::abs(st) > 1.0)
            continue;
        out.sin_theta.push_back(st);
        out.magnitude.push_back(std::abs(bins[std::size_t((l + m) % m)]));
    }
    const double peak = out.magnitude.empty() ? 0.0 : *std::max_element(out.magnitude.begin(), out.magnitude.end());
    if (peak > 0.0)
        for (double &v : out.magnitude)
            v /= peak;
    return out;
}

int count_lobes(const AngularSpectrum &spec, double fraction)
{
    const auto &v = spec.magnitude;
    if (v.empty())
        return 0;
    const double peak = *std::max_element(v.begin(), v.end());
    if (!(peak > 0.0))
        return 0;
    int lobes = 0;
    std::size_t i = 0;
    while (i < v.size())
    {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[i])
            ++j; // plateau [i, j]
        const bool left = i == 0 || v[i - 1] < v[i];
        const bool right = j + 1 == v.size() || v[j + 1] < v[i];
        if (left && right && v[i] >= fraction * peak)
            ++lobes;
        i = j + 1;
    }
    return lobes;
}

} // namespace gratewave
