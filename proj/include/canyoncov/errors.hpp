// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The canyoncov Authors
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

#ifndef CANYONCOV_ERRORS_HPP
#define CANYONCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace canyoncov {

// Input outside a model's domain (distance below 1 m, empty scan, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad configuration value or unknown key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or missing input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical problem that makes an estimate impossible (singular design, ...).
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace canyoncov

#endif
