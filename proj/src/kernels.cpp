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

#include "gratewave/kernels.hpp"

#include <exception>
#include <limits>

#include <omp.h>

namespace gratewave
{

void sweep_serial(std::size_t n, const std::function<void(std::size_t)> &fn)
{
    for (std::size_t i = 0; i < n; ++i)
        fn(i);
}

void sweep_parallel(std::size_t n, int workers, const std::function<void(std::size_t)> &fn)
{
    std::exception_ptr error;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    const long count = static_cast<long>(n);
    const int threads = workers > 0 ? workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i)
    {
        try
        {
            fn(static_cast<std::size_t>(i));
        }
        catch (...)
        {
#pragma omp critical(gratewave_sweep_error)
            if (static_cast<std::size_t>(i) < error_index)
            {
                error_index = static_cast<std::size_t>(i);
                error = std::current_exception();
            }
        }
    }
    if (error)
        std::rethrow_exception(error);
}

void sweep(std::size_t n, const Execution &exec, const std::function<void(std::size_t)> &fn)
{
    if (exec.parallel && effective_workers(exec) > 1)
        sweep_parallel(n, exec.workers, fn);
    else
        sweep_serial(n, fn);
}

int effective_workers(const Execution &exec)
{
    if (!exec.parallel)
        return 1;
    return exec.workers > 0 ? exec.workers : omp_get_max_threads();
}

} // namespace gratewave
