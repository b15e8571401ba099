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

#include <cstdint>
#include <string>
#include <vector>

namespace gratewave::io
{

// Shortest round-trip decimal text of a double ("%.17g").
std::string format_number(double v);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string &data);
// First 12 hex digits of fnv1a(data).
std::string short_hash(const std::string &data);

// Writes text to path, throwing std::runtime_error on failure.
void write_text(const std::string &path, const std::string &text);

// Row-major grid with x fastest and row 0 at the smallest y.
struct ScalarImage
{
    int width = 0;
    int height = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> masked;
};

struct PgmScaling
{
    double min = 0.0;
    double max = 0.0;
};

// 16-bit big-endian binary PGM (P5, maxval 65535). Rows are written from the largest
// y down so the image is upright. Unmasked values map linearly from [min, max] to
// [1, 65535]; masked pixels are 0.
PgmScaling write_pgm16(const std::string &path, const ScalarImage &image);

} // namespace gratewave::io
