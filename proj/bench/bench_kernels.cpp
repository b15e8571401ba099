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

// Serial vs OpenMP timing of the grid sweeps. Usage: bench_kernels [workers] [grid]

#include "gratewave/field.hpp"
#include "gratewave/mimo.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace gratewave;

namespace
{

template <class F> double time_ms(F &&f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char **argv)
{
    const int workers = argc > 1 ? std::atoi(argv[1]) : 4;
    const int n = argc > 2 ? std::atoi(argv[2]) : 21;

    const RoomGeometry room{0.0, 0.0, 2.4e9};
    const double wl = room.wavelength();
    const RoomGeometry box{10.0 * wl, 10.0 * wl, room.frequency};
    const ArrayLayout tx{{5.0 / 3.0 * wl, 5.0 * wl}, 6, 0.5 * wl, 0.0};
    const ArrayLayout rx{{20.0 / 3.0 * wl, 5.0 * wl}, 6, 0.5 * wl, 0.0};
    const SamplingGrid grid = SamplingGrid::uniform(box, n);

    std::printf("%-22s %10s %10s %8s %s\n", "kernel", "serial_ms", "omp_ms", "speedup", "identical");
    for (const WallModel &wall : {WallModel{PecWalls{}}, WallModel{DrywallWalls{}}})
    {
        const GreensEvaluator eval(box, wall, PathTraceLimits{}, tx.element_positions());
        const std::vector<Complex> w(6, Complex{1.0, 0.0});

        FieldGrid fs, fp;
        const double f_serial = time_ms([&] { fs = field_map(eval, w, grid, {false, 1}); });
        const double f_par = time_ms([&] { fp = field_map(eval, w, grid, {true, workers}); });
        const bool f_same = std::memcmp(fs.values.data(), fp.values.data(), fs.values.size() * sizeof(Complex)) == 0;
        std::printf("%-22s %10.1f %10.1f %8.2f %s\n", ("field_map/" + wall_tag(wall)).c_str(), f_serial, f_par,
                    f_serial / f_par, f_same ? "yes" : "NO");

        CapacityGrid cs, cp;
        const double c_serial = time_ms([&] { cs = capacity_map(eval, rx, PowerBudget{}, grid, {false, 1}); });
        const double c_par = time_ms([&] { cp = capacity_map(eval, rx, PowerBudget{}, grid, {true, workers}); });
        const bool c_same = std::memcmp(cs.values.data(), cp.values.data(), cs.values.size() * sizeof(double)) == 0;
        std::printf("%-22s %10.1f %10.1f %8.2f %s\n", ("capacity_map/" + wall_tag(wall)).c_str(), c_serial, c_par,
                    c_serial / c_par, c_same ? "yes" : "NO");
        if (!f_same || !c_same)
            return 1;
    }
    return 0;
}
