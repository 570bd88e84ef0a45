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

#ifndef FIMOPT_CONFIG_HPP
#define FIMOPT_CONFIG_HPP

#include "fimopt/experiments.hpp"

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace fimopt
{
    // Sets one configuration key from its text value. Throws InvalidArgument on unknown
    // keys or unparsable values.
    void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value);

    // Reads "key = value" lines; '#' starts a comment, blank lines are ignored.
    void apply_config(ExperimentConfig &cfg, std::istream &in);
    void apply_config_file(ExperimentConfig &cfg, const std::string &path);

    // Every key with its current value, in a fixed order. Feeding the result back through
    // set_config_value reproduces the configuration.
    std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig &cfg);
}

#endif
