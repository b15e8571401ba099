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

#include "gratewave/geometry.hpp"
#include "gratewave/specfun.hpp"

#include <functional>
#include <vector>

namespace gratewave
{

// Complex field samples on n uniformly spaced points from start to end.
struct ApertureSampling
{
    Point start;
    Point end;
    int n_samples = 0;
    std::vector<Complex> samples;

    double spacing() const { return n_samples > 1 ? distance(start, end) / double(n_samples - 1) : 0.0; }
    Point position(int i) const
    {
        const double t = n_samples > 1 ? double(i) / double(n_samples - 1) : 0.0;
        return start + t * (end - start);
    }
};

enum class SpectrumWindow
{
    none,
    hann
};

struct AngularSpectrum
{
    std::vector<double> sin_theta; // ascending, within [-1, 1]
    std::vector<double> magnitude; // peak-normalised
};

// Samples field(p) on the line. Throws ConfigError when the spacing exceeds
// wavelength / 2 and DomainError for n < 2.
ApertureSampling sample_aperture(const std::function<Complex(Point)> &field, Point start, Point end, int n,
                                 double wavelength);

// Raw DFT sum_k w_k x_k e^{+j 2 pi k l / (N pad)} of the (windowed, zero-padded) samples,
// in natural bin order. The + sign maps a wave e^{-j k0 s sin(theta)} along the
// aperture to the bin at +sin(theta).
std::vector<Complex> aperture_dft(const std::vector<Complex> &samples, SpectrumWindow window, int zero_pad);

// Angular spectrum: bins with |sin(theta)| <= 1, sin(theta) = (lambda / spacing)(l / M),
// magnitudes normalised to peak 1. Requires at least 8 samples and zero_pad >= 1.
AngularSpectrum angular_spectrum(const ApertureSampling &ap, double wavelength,
                                 SpectrumWindow window = SpectrumWindow::none, int zero_pad = 4);

// Local maxima at or above `fraction` of the peak (plateaus counted once).
int count_lobes(const AngularSpectrum &spec, double fraction = 0.1);

} // namespace gratewave
