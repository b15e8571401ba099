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

#include <stdexcept>
#include <string>

namespace gratewave
{

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Observation point coincides with a (real or image) source.
class SingularityError : public DomainError
{
public:
    using DomainError::DomainError;
};

// Inconsistent or unsupported configuration (branch caps, Nyquist, table ranges).
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input text. Carries the 1-based line when known (0 otherwise).
class ParseError : public ConfigError
{
public:
    ParseError(const std::string &what, std::size_t line = 0)
        : ConfigError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A parsed value violates a named constraint, e.g. field "rx.center".
class ValidationError : public ConfigError
{
public:
    ValidationError(std::string field, const std::string &what)
        : ConfigError(field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace gratewave
