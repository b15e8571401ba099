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

#include <complex>

namespace gratewave
{

using Complex = std::complex<double>;

namespace specfun
{

// Arguments at or above this value use the Hankel asymptotic expansions,
// below it the ascending power series. At x = 12 both routes are accurate
// to a few 1e-11, so the switch is continuous well below 1e-9.
inline constexpr double kAsymptoticSwitch = 12.0;

// Bessel function of the first kind, order zero. Throws DomainError on
// non-finite input.
double bessel_j0(double x);

// Bessel function of the second kind, order zero. Requires x > 0.
double bessel_y0(double x);

// H0^(2)(x) = J0(x) - j Y0(x). Requires x > 0.
Complex hankel2_0(double x);

// ln I0(x) for x >= 0, overflow free for large x.
double log_bessel_i0(double x);

} // namespace specfun
} // namespace gratewave
