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

#include "gratewave/errors.hpp"
#include "gratewave/stats.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

using namespace gratewave;

namespace
{
// Rayleigh limit of both families.
double rayleigh(double r, double omega) { return 2.0 * r / omega * std::exp(-r * r / omega); }
} // namespace

TEST_CASE("Rician pdf is normalised and has the right power")
{
    for (double k : {0.0, 0.5, 3.0, 50.0})
    {
        const double omega = 1.7;
        const double s = std::sqrt(k * omega / (k + 1.0)), sigma = std::sqrt(omega / (2.0 * (k + 1.0)));
        const double area = oracle::simpson([&](double r) { return r == 0.0 ? 0.0 : rician_pdf(r, s, sigma); }, 0.0,
                                            12.0, 20000);
        const double power = oracle::simpson(
            [&](double r) { return r == 0.0 ? 0.0 : r * r * rician_pdf(r, s, sigma); }, 0.0, 12.0, 20000);
        CHECK(area == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(power == doctest::Approx(omega).epsilon(1e-8));
    }
}

TEST_CASE("Hoyt pdf is normalised and has the right power")
{
    for (double q : {0.05, 0.2, 0.6, 1.0})
    {
        const double omega = 0.8;
        const double area = oracle::simpson([&](double r) { return r == 0.0 ? 0.0 : hoyt_pdf(r, q, omega); }, 0.0,
                                            10.0, 40000);
        const double power = oracle::simpson(
            [&](double r) { return r == 0.0 ? 0.0 : r * r * hoyt_pdf(r, q, omega); }, 0.0, 10.0, 40000);
        CHECK(area == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(power == doctest::Approx(omega).epsilon(1e-7));
    }
}

TEST_CASE("both families reduce to Rayleigh")
{
    for (double r : {0.1, 0.5, 1.0, 2.0})
    {
        CHECK(rician_pdf(r, 0.0, std::sqrt(0.5)) == doctest::Approx(rayleigh(r, 1.0)).epsilon(1e-13));
        CHECK(hoyt_pdf(r, 1.0, 1.0) == doctest::Approx(rayleigh(r, 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("Hoyt pdf matches the Gaussian quadrature construction")
{
    // Envelope of X + jY with var(X) = sx^2, var(Y) = sy^2, integrated over the phase.
    const double q = 0.4, omega = 1.3;
    const double sx2 = omega / (1.0 + q * q), sy2 = q * q * sx2;
    for (double r : {0.2, 0.7, 1.5})
    {
        const double ref = oracle::simpson(
            [&](double phi) {
                const double x = r * std::cos(phi), y = r * std::sin(phi);
                return r / (2.0 * std::numbers::pi * std::sqrt(sx2 * sy2)) *
                       std::exp(-x * x / (2.0 * sx2) - y * y / (2.0 * sy2));
            },
            0.0, 2.0 * std::numbers::pi, 2000);
        CHECK(hoyt_pdf(r, q, omega) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("pdf domains")
{
    CHECK(rician_pdf(0.0, 1.0, 1.0) == 0.0);
    CHECK(hoyt_pdf(0.0, 0.5, 1.0) == 0.0);
    CHECK_THROWS_AS(rician_pdf(-1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(rician_pdf(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(hoyt_pdf(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(hoyt_pdf(1.0, 1.5, 1.0), DomainError);
    CHECK_THROWS_AS(hoyt_pdf(1.0, 0.5, -1.0), DomainError);
    // Log forms stay finite where the direct form underflows.
    CHECK(std::isfinite(rician_log_pdf(30.0, 30.0, 0.01)));
    CHECK(std::isfinite(hoyt_log_pdf(5.0, 1e-3, 1.0)));
}

TEST_CASE("RMS normalisation and pooling")
{
    const auto e = rms_normalize({1.0, 2.0, 2.0});
    double p = 0.0;
    for (double v : e.samples)
        p += v * v;
    CHECK(p / 3.0 == doctest::Approx(1.0));
    CHECK(e.samples[1] == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK_THROWS_AS(rms_normalize({}), DomainError);
    CHECK_THROWS_AS(rms_normalize({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(rms_normalize({1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(rms_normalize({1.0, std::nan("")}), DomainError);

    EnvelopeEnsemble a, b;
    a.samples = {1.0, 2.0};
    a.wall = "pec";
    b.samples = {3.0};
    const auto pooled = pool_ensembles({a, b});
    CHECK(pooled.samples == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(pooled.wall == "pec");
}

TEST_CASE("ring ensemble selects the annulus")
{
    FieldGrid f;
    f.grid = {{0.0, 0.0}, 1.0, 5, 5};
    f.values.resize(25);
    f.masked.assign(25, 0);
    for (std::size_t i = 0; i < 25; ++i)
        f.values[i] = Complex{double(i), 0.0};
    f.masked[7] = 1; // (2, 1): r = 1 from the centre
    const auto ring = ring_ensemble(f, {2.0, 2.0}, 0.9, 1.1);
    CHECK(ring.size() == 3);
    CHECK_THROWS_AS(ring_ensemble(f, {2.0, 2.0}, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ring_ensemble(f, {2.0, 2.0}, 0.1, 0.2), DomainError);
}

TEST_CASE("empirical pdf")
{
    const auto ens = rms_normalize(oracle::rician_samples(2.0, 20000, 9));
    const auto pdf = empirical_pdf(ens, 40);
    REQUIRE(pdf.bin_edges.size() == 41);
    REQUIRE(pdf.densities.size() == 40);
    double area = 0.0;
    for (int j = 0; j < 40; ++j)
        area += pdf.densities[std::size_t(j)] * (pdf.bin_edges[std::size_t(j) + 1] - pdf.bin_edges[std::size_t(j)]);
    CHECK(area == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pdf.n_samples == 20000);
    CHECK(pdf.freedman_diaconis_bins > 10);
    CHECK_THROWS_AS(empirical_pdf(ens, 1), DomainError);
    EnvelopeEnsemble flat;
    flat.samples = {1.0, 1.0};
    CHECK_THROWS_AS(empirical_pdf(flat, 10), DomainError);
}

TEST_CASE("fits recover generating parameters")
{
    SUBCASE("Rician")
    {
        const auto fit = fit_rician(rms_normalize(oracle::rician_samples(3.0, 20000, 21)));
        CHECK(fit.model == FadingModel::rician);
        CHECK(fit.k_factor == doctest::Approx(3.0).epsilon(0.1));
        CHECK(fit.omega == doctest::Approx(1.0).epsilon(0.02));
        CHECK(fit.k_factor == doctest::Approx(fit.s * fit.s / (2.0 * fit.sigma * fit.sigma)));
        CHECK_FALSE(fit.bounded);
        CHECK(fit.derived() == fit.k_factor);
    }
    SUBCASE("Hoyt")
    {
        const auto fit = fit_hoyt(rms_normalize(oracle::hoyt_samples(0.35, 20000, 22)));
        CHECK(fit.model == FadingModel::hoyt);
        CHECK(fit.q == doctest::Approx(0.35).epsilon(0.1));
        CHECK(fit.omega == doctest::Approx(1.0).epsilon(0.02));
        CHECK(fit.derived() == fit.q);
    }
}

TEST_CASE("fitted log-likelihood is a local maximum")
{
    const auto ens = rms_normalize(oracle::hoyt_samples(0.5, 5000, 4));
    const auto fit = fit_hoyt(ens);
    auto ll = [&](double q, double omega) {
        double acc = 0.0;
        for (double r : ens.samples)
            acc += hoyt_log_pdf(r, q, omega);
        return acc;
    };
    CHECK(fit.log_likelihood == doctest::Approx(ll(fit.q, fit.omega)).epsilon(1e-12));
    for (double dq : {-0.01, 0.01})
        CHECK(ll(fit.q + dq, fit.omega) <= fit.log_likelihood);
    for (double dw : {-0.01, 0.01})
        CHECK(ll(fit.q, fit.omega * (1.0 + dw)) <= fit.log_likelihood);
}

TEST_CASE("Rayleigh data sits at the Hoyt bound")
{
    const auto fit = fit_hoyt(rms_normalize(oracle::rician_samples(0.0, 5000, 8)));
    CHECK(fit.q > 0.9);
}

TEST_CASE("model selection")
{
    const auto r = select_model(rms_normalize(oracle::rician_samples(5.0, 20000, 1)));
    CHECK(r.selected.model == FadingModel::rician);
    CHECK(r.rician.log_likelihood > r.hoyt.log_likelihood);
    const auto h = select_model(rms_normalize(oracle::hoyt_samples(0.2, 20000, 2)));
    CHECK(h.selected.model == FadingModel::hoyt);
    CHECK(std::string(model_name(FadingModel::rician)) == "rician");
    CHECK(std::string(model_name(FadingModel::hoyt)) == "hoyt");
}

TEST_CASE("fit input validation")
{
    EnvelopeEnsemble small;
    small.samples.assign(50, 1.0);
    CHECK_THROWS_AS(fit_rician(small), DomainError);
    EnvelopeEnsemble bad = rms_normalize(oracle::rician_samples(1.0, 200, 3));
    bad.samples[5] = -1.0;
    CHECK_THROWS_AS(fit_hoyt(bad), DomainError);
}
