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

#include <vector>

namespace gratewave
{

// Homogeneous lossy dielectric slab (gypsum board by default).
struct DrywallMaterial
{
    double eps_real = 2.75;
    double loss_tangent = 0.01;
    double thickness = 0.013; // m
    double mu_rel = 1.0;

    // eps_r = eps' (1 - j tan(delta))
    Complex relative_permittivity() const { return {eps_real, -eps_real * loss_tangent}; }
    // sigma = omega eps0 eps''
    double conductivity(double omega) const;
    // gamma = sqrt(j omega mu (sigma + j omega eps0 eps')), Re(gamma) >= 0
    Complex propagation_constant(double omega) const;
    // eta = sqrt(j omega mu / (sigma + j omega eps0 eps'))
    Complex intrinsic_impedance(double omega) const;

    void validate() const;
};

// TE reflection coefficient of the air/slab/air stack at incidence theta_i.
// Requires 0 <= theta_i < pi/2.
Complex slab_reflection(double theta_i, const DrywallMaterial &mat, const RoomGeometry &room);

struct ReflectionSample
{
    double theta;     // rad
    double magnitude;
    double phase;     // rad
};

// Uniform sampling theta_k = k (pi/2) / n_angles, k = 0..n_angles-1.
std::vector<ReflectionSample> drywall_reflection_curve(const DrywallMaterial &mat,
                                                       const RoomGeometry &room, int n_angles);

} // namespace gratewave
