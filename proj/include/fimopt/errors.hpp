// SPDX-License-Identifier: Apache-2.0
//
// fimopt: surface-shape and phase optimization for flexible intelligent metasurfaces
// Copyright (C) 2026 The fimopt authors
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

#ifndef FIMOPT_ERRORS_HPP
#define FIMOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fimopt
{
    // Bad configuration or inconsistent dimensions. Maps to CLI exit code 1.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Scenario whose effective channel vanishes, so no beamformer is defined.
    class DegenerateScenario : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Input outside the domain of a restricted formula (e.g. complex gains in the closed form).
    class UnsupportedInput : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };
}

#endif
