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

#ifndef FIMOPT_TABLE_HPP
#define FIMOPT_TABLE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fimopt
{
    using Cell = std::variant<std::int64_t, double, std::string>;

    // Experiment output: a metadata block, a header row and typed rows.
    struct Table
    {
        std::vector<std::pair<std::string, std::string>> metadata;
        std::vector<std::string> columns;
        std::vector<std::vector<Cell>> rows;

        void add_metadata(std::string key, std::string value);
        // Throws InvalidArgument when the row width does not match the header.
        void add_row(std::vector<Cell> row);

        std::size_t column(const std::string &name) const;
        double number(std::size_t row, const std::string &name) const;
        std::string text(std::size_t row, const std::string &name) const;
    };

    // 12 significant digits
    std::string format_number(double x);

    // "# key: value" metadata lines, then a comma-separated header and rows.
    std::string to_csv(const Table &table);

    // {"metadata": {...}, "rows": [{column: value, ...}, ...]}
    std::string to_json(const Table &table);
}

#endif
