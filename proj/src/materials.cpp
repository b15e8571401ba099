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

#include "gratewave/materials.hpp"
#include "gratewave/errors.hpp"

#include <cmath>
#include <numbers>

namespace gratewave
{

double DrywallMaterial::conductivity(double omega) const
{
    return omega * constants::eps0 * eps_real * loss_tangent;
}

Complex DrywallMaterial::propagation_constant(double omega) const
{
    const Complex j{0.0, 1.0};
    const Complex g = std::sqrt(j * omega * constants::mu0 * mu_rel *
                                (conductivity(omega) + j * omega * constants::eps0 * eps_real));
    return g.real() < 0.0 ? -g : g;
}

Complex DrywallMaterial::intrinsic_impedance(double omega) const
{
    const Complex j{0.0, 1.0};
    return std::sqrt(j * omega * constants::mu0 * mu_rel /
                     (conductivity(omega) + j * omega * constants::eps0 * eps_real));
}

void DrywallMaterial::validate() const
{
    if (!(eps_real >= 1.0))
        throw DomainError("drywall eps_real must be >= 1");
    if (!(loss_tangent >= 0.0))
        throw DomainError("drywall loss_tangent must be >= 0");
    if (!(thickness > 0.0))
        throw DomainError("drywall thickness must be > 0");
    if (!(mu_rel > 0.0))
        throw DomainError("drywall mu_rel must be > 0");
}

Complex slab_reflection(double theta_i, const DrywallMaterial &mat, const RoomGeometry &room)
{
    if (!(theta_i >= 0.0 && theta_i < 0.5 * std::numbers::pi))
        throw DomainError("slab_reflection: theta_i must lie in [0, pi/2)");

    const double omega = room.omega();
    const double k0 = room.k0();
    const Complex gamma2 = mat.propagation_constant(omega);
    const Complex eta2 = mat.intrinsic_impedance(omega);
    const double eta1 = constants::eta0;

    // Snell's law with the slab wavenumber k2 = -j gamma2.
    const Complex k2 = Complex{0.0, -1.0} * gamma2;
    const Complex sin_t = k0 * std::sin(theta_i) / k2;
    Complex cos_t = std::sqrt(1.0 - sin_t * sin_t);
    // Branch with a decaying transmitted wave inside the slab.
    if ((gamma2 * cos_t).real() < 0.0)
        cos_t = -cos_t;
    const double cos_i = std::cos(theta_i);

    const Complex g12 = (eta2 * cos_i - eta1 * cos_t) / (eta2 * cos_i + eta1 * cos_t);

    // Air-backed slab: g23 = g21 = -g12 and t12 t21 = 1 - g12^2, so the multiple-reflection
    // sum collapses to g12 (1 - e) / (1 - g12^2 e) with e the round-trip factor.
    const Complex z = -2.0 * gamma2 * mat.thickness * cos_t;
    const double ea = std::exp(z.real());
    const double sb = std::sin(0.5 * z.imag());
    const Complex one_minus_e{-(std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * sb * sb), -ea * std::sin(z.imag())};
    const Complex e = 1.0 - one_minus_e;
    return g12 * one_minus_e / (1.0 - g12 * g12 * e);
}

std::vector<ReflectionSample> drywall_reflection_curve(const DrywallMaterial &mat,
                                                       const RoomGeometry &room, int n_angles)
{
    if (n_angles < 2)
        throw DomainError("drywall_reflection_curve: n_angles must be >= 2");
    std::vector<ReflectionSample> out;
    out.reserve(static_cast<std::size_t>(n_angles));
    for (int k = 0; k < n_angles; ++k)
    {
        const double theta = double(k) * 0.5 * std::numbers::pi / double(n_angles);
        const Complex g = slab_reflection(theta, mat, room);
        out.push_back({theta, std::abs(g), std::arg(g)});
    }
    return out;
}

} // namespace gratewave
