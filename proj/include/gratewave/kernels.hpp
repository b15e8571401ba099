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

#include <cstddef>
#include <functional>

namespace gratewave
{

// How index sweeps are executed. Every sweep writes each index's result into its
// own slot, so the serial and parallel paths give bit-identical output.
struct Execution
{
    bool parallel = true;
    int workers = 0; // 0: OpenMP runtime default
};

// Calls fn(i) for i = 0..n-1 in order.
void sweep_serial(std::size_t n, const std::function<void(std::size_t)> &fn);

// Calls fn(i) for i = 0..n-1 across an OpenMP team. If any call throws, the
// exception of the lowest failing index is rethrown after the loop.
void sweep_parallel(std::size_t n, int workers, const std::function<void(std::size_t)> &fn);

void sweep(std::size_t n, const Execution &exec, const std::function<void(std::size_t)> &fn);

// Worker count the parallel path would use.
int effective_workers(const Execution &exec);

} // namespace gratewave
