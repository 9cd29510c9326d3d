// SPDX-License-Identifier: Apache-2.0
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

#ifndef HYBRID_ERRORS_HPP
#define HYBRID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hybrid
{
    // Configuration and argument validation failures. The CLI maps these to exit code 2.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class DimensionMismatch : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class InvalidPathCount : public ConfigError
    {
    public:
        using ConfigError::ConfigError;
    };

    class UnknownFigure : public ConfigError
    {
    public:
        using ConfigError::ConfigError;
    };

    // Numerical failures
    class SingularMatrix : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class NotHermitian : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class NegativeEigenvalue : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    class ZeroVector : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Closed-form domain errors
    class UnsupportedK : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class TargetInfeasible : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class InvalidTarget : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Raised by the runner when degenerate trials reach the reporting threshold. Exit code 3.
    class DegeneracyExceeded : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
