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

#include "gratewave/grating.hpp"
#include "gratewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace gratewave
{
namespace
{

constexpr double kGrazingGuard = 1e-9;
constexpr double kDeg = std::numbers::pi / 180.0;

} // namespace

CoefficientTable::CoefficientTable(std::vector<Row> rows) : rows_(std::move(rows))
{
    if (rows_.empty())
        throw ConfigError("coefficient table is empty");
    for (std::size_t i = 1; i < rows_.size(); ++i)
    {
        const auto &a = rows_[i - 1], &b = rows_[i];
        if (b.theta_deg < a.theta_deg || (b.theta_deg == a.theta_deg && b.order <= a.order))
            throw ParseError("coefficient table rows must be sorted by (theta, m) without duplicates",
                             i + 2);
    }
    for (const auto &r : rows_)
    {
        if (angles_.empty() || angles_.back() != r.theta_deg)
            angles_.push_back(r.theta_deg);
        by_order_[r.order].emplace_back(r.theta_deg, r.value);
    }
}

CoefficientTable CoefficientTable::parse(std::istream &in)
{
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<Row> rows;
    while (std::getline(in, line))
    {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#')
            continue;
        if (!header_seen)
        {
            std::string m, re, im;
            ls >> m >> re >> im;
            if (first != "theta_deg" || m != "m" || re != "re" || im != "im")
                throw ParseError("expected header `theta_deg m re im`", line_no);
            header_seen = true;
            continue;
        }
        Row r{};
        std::istringstream rs(line);
        double re = 0.0, im = 0.0;
        if (!(rs >> r.theta_deg >> r.order >> re >> im))
            throw ParseError("expected four numeric columns", line_no);
        std::string extra;
        if (rs >> extra)
            throw ParseError("unexpected trailing field `" + extra + "`", line_no);
        r.value = {re, im};
        rows.push_back(r);
    }
    if (!header_seen)
        throw ParseError("missing header `theta_deg m re im`");
    return CoefficientTable(std::move(rows));
}

CoefficientTable CoefficientTable::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open coefficient table: " + path);
    return parse(in);
}

void CoefficientTable::write(std::ostream &out) const
{
    out << "theta_deg m re im\n" << std::setprecision(17);
    for (const auto &r : rows_)
        out << r.theta_deg << ' ' << r.order << ' ' << r.value.real() << ' ' << r.value.imag() << '\n';
}

Complex CoefficientTable::interpolate(int order, double theta_deg) const
{
    auto it = by_order_.find(order);
    if (it == by_order_.end())
        return {0.0, 0.0};
    const auto &pts = it->second;
    if (theta_deg < pts.front().first || theta_deg > pts.back().first)
        return {0.0, 0.0};
    auto hi = std::lower_bound(pts.begin(), pts.end(), theta_deg,
                               [](const auto &p, double t) { return p.first < t; });
    if (hi->first == theta_deg || hi == pts.begin())
        return hi->second;
    auto lo = hi - 1;
    const double w = (theta_deg - lo->first) / (hi->first - lo->first);
    return (1.0 - w) * lo->second + w * hi->second;
}

Complex CoefficientTable::value(int order, double theta_rad) const
{
    const double deg = theta_rad / kDeg;
    const double lo = angles_.front(), hi = angles_.back();
    if (deg >= lo && deg <= hi)
        return interpolate(order, deg);
    if (-deg >= lo && -deg <= hi)
        return interpolate(-order, -deg);
    std::ostringstream msg;
    msg << "coefficient table lookup at " << deg << " deg outside [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
}

void CoefficientTable::validate(double period, double wavelength, double tolerance) const
{
    for (const auto &r : rows_)
        if (std::abs(r.value) > 1.0 + 1e-9)
        {
            std::ostringstream msg;
            msg << "coefficient table: |R_" << r.order << "(" << r.theta_deg << " deg)| exceeds 1";
            throw ConfigError(msg.str());
        }
    for (double deg : angles_)
    {
        const double th = deg * kDeg;
        const double cos_i = std::cos(th);
        if (cos_i <= 0.0)
            continue;
        double total = 0.0;
        for (const auto &[m, pts] : by_order_)
        {
            double s = 0.0;
            if (!order_propagates(std::sin(th), m, period, wavelength, s))
                continue;
            total += std::norm(interpolate(m, deg)) * std::sqrt(1.0 - s * s) / cos_i;
        }
        if (total > 1.0 + tolerance)
        {
            std::ostringstream msg;
            msg << "coefficient table violates the energy bound at " << deg << " deg (sum " << total << ")";
            throw ConfigError(msg.str());
        }
    }
}

void GratingSpec::validate(double wavelength) const
{
    if (!(period > 0.0))
        throw DomainError("grating period must be > 0");
    if (!(pec_duty >= 0.0 && pec_duty <= 1.0))
        throw DomainError("grating pec_duty must lie in [0, 1]");
    if (max_order < 0)
        throw DomainError("grating max_order must be >= 0");
    dielectric.validate();
    if (auto table = std::get_if<std::shared_ptr<const CoefficientTable>>(&coeff_source))
    {
        if (!*table)
            throw ConfigError("grating coefficient table missing");
        (*table)->validate(period, wavelength);
    }
}

bool order_propagates(double sin_theta_i, int m, double period, double wavelength, double &sin_out)
{
    sin_out = sin_theta_i - double(m) * wavelength / period;
    return std::abs(sin_out) < 1.0 - kGrazingGuard;
}

std::vector<GratingOrder> grating_orders(double theta_i, double period, double wavelength)
{
    std::vector<GratingOrder> out;
    const double s = std::sin(theta_i);
    const double ratio = wavelength / period;
    // |s - m ratio| < 1  =>  m in ((s - 1)/ratio, (s + 1)/ratio)
    const int lo = int(std::floor((s - 1.0) / ratio)) - 1;
    const int hi = int(std::ceil((s + 1.0) / ratio)) + 1;
    for (int m = lo; m <= hi; ++m)
    {
        double sm = 0.0;
        if (order_propagates(s, m, period, wavelength, sm))
            out.push_back({m, std::asin(sm)});
    }
    return out;
}

Complex grating_coefficient(int m, double theta_i, const GratingSpec &spec, const RoomGeometry &room)
{
    if (auto table = std::get_if<std::shared_ptr<const CoefficientTable>>(&spec.coeff_source))
        return (*table)->value(m, theta_i);

    // Fourier coefficient over one cell of r(t) = -1 on the PEC part, Gamma_dw elsewhere,
    // c_m = (1/p) int_0^p r(t) e^{-j 2 pi m t / p} dt.
    const double duty = spec.pec_duty;
    const Complex gamma = (duty < 1.0) ? slab_reflection(std::abs(theta_i), spec.dielectric, room)
                                       : Complex{0.0, 0.0};
    if (m == 0)
        return -duty + (1.0 - duty) * gamma;
    const double arg = 2.0 * std::numbers::pi * double(m);
    const Complex window = (1.0 - std::exp(Complex{0.0, -arg * duty})) / Complex{0.0, arg};
    return (-1.0 - gamma) * window;
}

std::map<int, Complex> grating_coefficients(double theta_i, const GratingSpec &spec,
                                            const RoomGeometry &room)
{
    std::map<int, Complex> out;
    for (const auto &o : grating_orders(theta_i, spec.period, room.wavelength()))
        if (std::abs(o.m) <= spec.max_order)
            out.emplace(o.m, grating_coefficient(o.m, theta_i, spec, room));
    return out;
}

} // namespace gratewave
