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
#include "gratewave/grating.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <doctest.h>

using namespace gratewave;

namespace
{
const RoomGeometry kRoom{1.0, 1.0, 2.4e9};
const double kWl = kRoom.wavelength();

GratingSpec make_spec(double period, double duty = 0.5, int max_order = 3)
{
    GratingSpec s;
    s.period = period;
    s.pec_duty = duty;
    s.max_order = max_order;
    return s;
}
} // namespace

TEST_CASE("subwavelength grating at normal incidence keeps only the specular order")
{
    const auto orders = grating_orders(0.0, 0.25 * kWl, kWl);
    REQUIRE(orders.size() == 1);
    CHECK(orders[0].m == 0);
    CHECK(orders[0].theta == 0.0);
}

TEST_CASE("grating orders follow the grating equation")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> th(-1.4, 1.4), per(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double ti = th(rng), p = per(rng) * kWl;
        const auto orders = grating_orders(ti, p, kWl);
        for (const auto &o : orders)
            CHECK(std::abs(o.theta - std::asin(std::sin(ti) - o.m * kWl / p)) <= 1e-12);
        // Completeness: every propagating order in a wide window is listed.
        std::size_t expected = 0;
        for (int m = -60; m <= 60; ++m)
            if (std::abs(std::sin(ti) - m * kWl / p) < 1.0 - 1e-9)
                ++expected;
        CHECK(orders.size() == expected);
    }
}

TEST_CASE("two-wavelength grating at normal incidence")
{
    const auto orders = grating_orders(0.0, 2.0 * kWl, kWl);
    REQUIRE(orders.size() == 3);
    CHECK(orders[0].m == -1);
    CHECK(orders[0].theta == doctest::Approx(std::numbers::pi / 6.0));
    CHECK(orders[2].theta == doctest::Approx(-std::numbers::pi / 6.0));
}

TEST_CASE("Kirchhoff coefficients for limiting duty cycles")
{
    GratingSpec all_pec = make_spec(2.0 * kWl, 1.0);
    CHECK(std::abs(grating_coefficient(0, 0.3, all_pec, kRoom) + 1.0) < 1e-15);
    for (int m : {-2, -1, 1, 2})
        CHECK(std::abs(grating_coefficient(m, 0.3, all_pec, kRoom)) < 1e-15);

    GratingSpec all_dw = make_spec(2.0 * kWl, 0.0);
    const Complex g = slab_reflection(0.3, all_dw.dielectric, kRoom);
    CHECK(std::abs(grating_coefficient(0, 0.3, all_dw, kRoom) - g) < 1e-15);
    CHECK(std::abs(grating_coefficient(1, 0.3, all_dw, kRoom)) < 1e-15);
}

TEST_CASE("Kirchhoff coefficients are Fourier coefficients of the reflectance profile")
{
    const GratingSpec s = make_spec(2.0 * kWl, 0.3);
    const double th = 0.2;
    const Complex gdw = slab_reflection(th, s.dielectric, kRoom);
    for (int m = -3; m <= 3; ++m)
    {
        // Midpoint quadrature of (1/p) int r(t) e^{-j 2 pi m t/p} dt on a unit cell.
        const int n = 200000;
        Complex acc{0.0, 0.0};
        for (int i = 0; i < n; ++i)
        {
            const double t = (i + 0.5) / n;
            const Complex r = t < s.pec_duty ? Complex{-1.0, 0.0} : gdw;
            acc += r * std::exp(Complex{0.0, -2.0 * std::numbers::pi * m * t});
        }
        acc /= double(n);
        CHECK(std::abs(grating_coefficient(m, th, s, kRoom) - acc) < 1e-5);
    }
}

TEST_CASE("Kirchhoff coefficients are even in the incidence angle")
{
    const GratingSpec s = make_spec(2.0 * kWl, 0.5);
    for (int m = -2; m <= 2; ++m)
        CHECK(std::abs(grating_coefficient(m, 0.4, s, kRoom) - grating_coefficient(m, -0.4, s, kRoom)) < 1e-15);
}

TEST_CASE("grating_coefficients honours max_order and propagation")
{
    const auto c = grating_coefficients(0.0, make_spec(2.0 * kWl, 0.5, 3), kRoom);
    CHECK(c.size() == 3);
    const auto c0 = grating_coefficients(0.0, make_spec(2.0 * kWl, 0.5, 0), kRoom);
    REQUIRE(c0.size() == 1);
    CHECK(c0.count(0) == 1);
}

TEST_CASE("grating spec validation")
{
    CHECK_NOTHROW(make_spec(kWl).validate(kWl));
    CHECK_THROWS_AS(make_spec(0.0).validate(kWl), DomainError);
    CHECK_THROWS_AS(make_spec(kWl, 1.5).validate(kWl), DomainError);
    CHECK_THROWS_AS(make_spec(kWl, 0.5, -1).validate(kWl), DomainError);
}

TEST_CASE("coefficient table round trip and lookup")
{
    std::vector<CoefficientTable::Row> rows;
    for (double deg : {0.0, 10.0, 20.0})
        for (int m = -1; m <= 1; ++m)
            rows.push_back({deg, m, Complex{0.1 * m + deg / 100.0, -0.05}});
    const CoefficientTable t(rows);
    std::ostringstream out;
    t.write(out);
    std::istringstream in("# comment\n" + out.str());
    const CoefficientTable back = CoefficientTable::parse(in);
    REQUIRE(back.rows().size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(back.rows()[i].value == rows[i].value);

    const double deg = std::numbers::pi / 180.0;
    CHECK(std::abs(t.value(1, 5.0 * deg) - Complex{0.15, -0.05}) < 1e-12);
    // Negative angles map to the mirrored order.
    CHECK(std::abs(t.value(1, -10.0 * deg) - t.value(-1, 10.0 * deg)) < 1e-15);
    CHECK(t.value(5, 10.0 * deg) == Complex{0.0, 0.0});
    CHECK_THROWS_AS(t.value(0, 30.0 * deg), ConfigError);
}

TEST_CASE("coefficient table parse errors")
{
    {
        std::istringstream in("theta m re im\n0 0 1 0\n");
        CHECK_THROWS_AS(CoefficientTable::parse(in), ParseError);
    }
    {
        std::istringstream in("theta_deg m re im\n0 0 1\n");
        try
        {
            CoefficientTable::parse(in);
            FAIL("expected ParseError");
        }
        catch (const ParseError &e)
        {
            CHECK(e.line() == 2);
        }
    }
    {
        std::istringstream in("theta_deg m re im\n10 0 1 0\n0 0 1 0\n");
        CHECK_THROWS_AS(CoefficientTable::parse(in), ParseError);
    }
    {
        std::istringstream in("theta_deg m re im\n0 0 1 0 9\n");
        CHECK_THROWS_AS(CoefficientTable::parse(in), ParseError);
    }
    CHECK_THROWS_AS(CoefficientTable::load("/nonexistent/table.txt"), ConfigError);
}

TEST_CASE("coefficient table energy validation")
{
    const CoefficientTable ok({{0.0, 0, {-0.9, 0.0}}, {10.0, 0, {-0.9, 0.0}}});
    CHECK_NOTHROW(ok.validate(2.0 * kWl, kWl));
    const CoefficientTable too_big({{0.0, 0, {1.2, 0.0}}});
    CHECK_THROWS_AS(too_big.validate(2.0 * kWl, kWl), ConfigError);
    const CoefficientTable energy({{0.0, -1, {0.7, 0.0}}, {0.0, 0, {0.7, 0.0}}, {0.0, 1, {0.7, 0.0}}});
    CHECK_THROWS_AS(energy.validate(2.0 * kWl, kWl), ConfigError);
}

TEST_CASE("table-backed grating uses the table")
{
    GratingSpec s = make_spec(2.0 * kWl);
    auto table = std::make_shared<const CoefficientTable>(
        std::vector<CoefficientTable::Row>{{0.0, 0, {-0.5, 0.1}}, {80.0, 0, {-0.5, 0.1}}});
    s.coeff_source = table;
    CHECK(grating_coefficient(0, 0.5, s, kRoom) == Complex{-0.5, 0.1});
    CHECK(grating_coefficient(1, 0.5, s, kRoom) == Complex{0.0, 0.0});
    GratingSpec missing = s;
    missing.coeff_source = std::shared_ptr<const CoefficientTable>{};
    CHECK_THROWS_AS(missing.validate(kWl), ConfigError);
}
