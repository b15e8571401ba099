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

#include "gratewave/field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gratewave
{

// RMS-normalised envelope samples with their provenance.
struct EnvelopeEnsemble
{
    std::vector<double> samples;
    double r_min = 0.0; // m
    double r_max = 0.0; // m
    Point center;
    std::string wall;
};

struct EmpiricalPdf
{
    std::vector<double> bin_edges; // bin_count + 1 entries
    std::vector<double> densities; // n_j / (N dr)
    std::size_t n_samples = 0;
    int bin_count = 0;
    int freedman_diaconis_bins = 0; // suggested bin count
};

enum class FadingModel
{
    rician,
    hoyt
};

struct FadingFit
{
    FadingModel model = FadingModel::rician;
    // Rician: s, sigma (and omega = s^2 + 2 sigma^2). Hoyt: q, omega.
    double s = 0.0;
    double sigma = 0.0;
    double q = 0.0;
    double omega = 0.0;
    double k_factor = 0.0; // s^2 / (2 sigma^2), Rician only
    double log_likelihood = 0.0;
    bool bounded = false; // optimum sits on a parameter bound
    int sweeps = 0;

    // K for Rician, q for Hoyt.
    double derived() const { return model == FadingModel::rician ? k_factor : q; }
};

struct ModelSelection
{
    FadingFit selected;
    FadingFit rician;
    FadingFit hoyt;
};

// |E| at unmasked grid points with r_min <= |p - center| <= r_max.
// Throws DomainError for an invalid radius pair or an empty annulus.
std::vector<double> ring_ensemble(const FieldGrid &field, Point center, double r_min, double r_max);

// r_i / sqrt(mean r^2). Throws DomainError for empty or all-zero input.
EnvelopeEnsemble rms_normalize(const std::vector<double> &samples);

// Concatenates ensembles that were normalised individually.
EnvelopeEnsemble pool_ensembles(const std::vector<EnvelopeEnsemble> &parts);

// Uniform bins over [min, max]. Throws DomainError for bins < 2 or a degenerate range.
EmpiricalPdf empirical_pdf(const EnvelopeEnsemble &ens, int bins = 50);

double rician_pdf(double r, double s, double sigma);
// Nakagami-q envelope density with mean power omega.
double hoyt_pdf(double r, double q, double omega);

double rician_log_pdf(double r, double s, double sigma);
double hoyt_log_pdf(double r, double q, double omega);

// Maximum-likelihood fits by coordinate golden-section search. Require at least 100
// samples; throw ConvergenceError when the sweep cap is reached.
FadingFit fit_rician(const EnvelopeEnsemble &ens);
FadingFit fit_hoyt(const EnvelopeEnsemble &ens);

// Both fits; the higher log-likelihood wins (Rician on ties).
ModelSelection select_model(const EnvelopeEnsemble &ens);

const char *model_name(FadingModel model);

} // namespace gratewave
