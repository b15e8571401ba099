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

#include "gratewave/materials.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace gratewave
{

// Tabulated order coefficients R_m(theta_i), e.g. from a unit-cell solver.
// Text format: header `theta_deg m re im`, rows sorted by (theta, m).
class CoefficientTable
{
public:
    struct Row
    {
        double theta_deg;
        int order;
        Complex value;
    };

    explicit CoefficientTable(std::vector<Row> rows);

    static CoefficientTable parse(std::istream &in);
    static CoefficientTable load(const std::string &path);
    void write(std::ostream &out) const;

    // Linear interpolation in angle for the given order; orders absent from the
    // table read as zero. Angles outside the table use R_m(theta) = R_{-m}(-theta)
    // when that lands inside, otherwise ConfigError.
    Complex value(int order, double theta_rad) const;

    // Checks |R_m| <= 1 and the propagating-order energy sum at every tabulated angle.
    void validate(double period, double wavelength, double tolerance = 1e-3) const;

    double min_theta_deg() const { return angles_.front(); }
    double max_theta_deg() const { return angles_.back(); }
    const std::vector<Row> &rows() const { return rows_; }

private:
    Complex interpolate(int order, double theta_deg) const;

    std::vector<Row> rows_;
    std::vector<double> angles_;                           // distinct, ascending
    std::map<int, std::vector<std::pair<double, Complex>>> by_order_;
};

struct KirchhoffApprox
{
};

using CoefficientSource = std::variant<KirchhoffApprox, std::shared_ptr<const CoefficientTable>>;

// Binary PEC/dielectric grating. The PEC segment occupies [0, pec_duty * period)
// of each cell, measured from the wall origin along its tangent.
struct GratingSpec
{
    double period = 0.0; // m
    double pec_duty = 0.5;
    DrywallMaterial dielectric;
    CoefficientSource coeff_source = KirchhoffApprox{};
    int max_order = 3;

    void validate(double wavelength) const;
};

struct GratingOrder
{
    int m;
    double theta; // rad
};

// Orders with |sin(theta_i) - m lambda/p| < 1 (grazing excluded), sorted by m.
std::vector<GratingOrder> grating_orders(double theta_i, double period, double wavelength);

// True if order m propagates, writing sin(theta_m) to sin_out.
bool order_propagates(double sin_theta_i, int m, double period, double wavelength, double &sin_out);

// Reflection coefficient of one order at signed incidence angle theta_i.
Complex grating_coefficient(int m, double theta_i, const GratingSpec &spec, const RoomGeometry &room);

// R_m for every propagating order with |m| <= spec.max_order.
std::map<int, Complex> grating_coefficients(double theta_i, const GratingSpec &spec,
                                            const RoomGeometry &room);

} // namespace gratewave
