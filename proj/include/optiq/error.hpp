/*
 * Copyright 2026 The optiq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OPTIQ_ERROR_HPP
#define OPTIQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace optiq {

enum class ErrorKind {
    shape,
    not_unitary,
    not_anti_hermitian,
    dimension_overflow,
    dimension_limit,
    invalid_ordering,
    unknown_state,
    rank_deficiency,
    internal_consistency,
    numerical_instability,
    invalid_argument,
    malformed_plan,
    parse,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the iteration when a monotonicity invariant is broken.
class NumericalInstabilityError : public Error {
public:
    NumericalInstabilityError(int step, const std::string& message)
        : Error(ErrorKind::numerical_instability, message), step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

} // namespace optiq

#endif
