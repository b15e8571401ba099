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

#include "gratewave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace gratewave::io
{

std::string format_number(double v)
{
    if (v == 0.0)
        return "0"; // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string &data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string short_hash(const std::string &data)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return std::string(buf, 12);
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush())
        throw std::runtime_error("write failed for " + path);
}

PgmScaling write_pgm16(const std::string &path, const ScalarImage &image)
{
    const std::size_t n = std::size_t(image.width) * std::size_t(image.height);
    if (image.width < 1 || image.height < 1 || image.values.size() != n || image.masked.size() != n)
        throw std::invalid_argument("write_pgm16: inconsistent image dimensions");

    PgmScaling sc{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i)
        if (!image.masked[i] && std::isfinite(image.values[i]))
        {
            sc.min = std::min(sc.min, image.values[i]);
            sc.max = std::max(sc.max, image.values[i]);
        }
    if (!(sc.min <= sc.max))
        sc = {0.0, 0.0};

    std::string data = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n65535\n";
    data.reserve(data.size() + 2 * n);
    const double span = sc.max - sc.min;
    for (int row = image.height - 1; row >= 0; --row)
        for (int col = 0; col < image.width; ++col)
        {
            const std::size_t i = std::size_t(row) * std::size_t(image.width) + std::size_t(col);
            unsigned level = 0;
            if (!image.masked[i] && std::isfinite(image.values[i]))
                level = span > 0.0 ? 1u + unsigned(std::lround((image.values[i] - sc.min) / span * 65534.0)) : 65535u;
            data.push_back(char((level >> 8) & 0xff));
            data.push_back(char(level & 0xff));
        }
    write_text(path, data);
    return sc;
}

} // namespace gratewave::io
