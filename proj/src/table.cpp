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

#include "fimopt/table.hpp"
#include "fimopt/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace fimopt
{
    void Table::add_metadata(std::string key, std::string value)
    {
        metadata.emplace_back(std::move(key), std::move(value));
    }

    void Table::add_row(std::vector<Cell> row)
    {
        if (row.size() != columns.size())
            throw InvalidArgument("Table: row has " + std::to_string(row.size()) + " cells, expected " +
                                  std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }

    std::size_t Table::column(const std::string &name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw InvalidArgument("Table: no column named '" + name + "'");
    }

    double Table::number(std::size_t row, const std::string &name) const
    {
        const Cell &c = rows.at(row).at(column(name));
        if (const auto *d = std::get_if<double>(&c))
            return *d;
        if (const auto *i = std::get_if<std::int64_t>(&c))
            return static_cast<double>(*i);
        throw InvalidArgument("Table: column '" + name + "' is not numeric");
    }

    std::string Table::text(std::size_t row, const std::string &name) const
    {
        const Cell &c = rows.at(row).at(column(name));
        if (const auto *s = std::get_if<std::string>(&c))
            return *s;
        if (const auto *i = std::get_if<std::int64_t>(&c))
            return std::to_string(*i);
        return format_number(std::get<double>(c));
    }

    std::string format_number(double x)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return buf;
    }

    namespace
    {
        std::string csv_field(const std::string &s)
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"')
                    out += '"';
                out += c;
            }
            return out + "\"";
        }

        std::string cell_text(const Cell &c)
        {
            if (const auto *s = std::get_if<std::string>(&c))
                return csv_field(*s);
            if (const auto *i = std::get_if<std::int64_t>(&c))
                return std::to_string(*i);
            return format_number(std::get<double>(c));
        }
    }

    std::string to_csv(const Table &table)
    {
        std::ostringstream os;
        for (const auto &[key, value] : table.metadata)
            os << "# " << key << ": " << value << '\n';
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            os << (i ? "," : "") << csv_field(table.columns[i]);
        os << '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << cell_text(row[i]);
            os << '\n';
        }
        return os.str();
    }

    std::string to_json(const Table &table)
    {
        nlohmann::ordered_json doc;
        doc["metadata"] = nlohmann::ordered_json::object();
        for (const auto &[key, value] : table.metadata)
            doc["metadata"][key] = value;
        doc["columns"] = table.columns;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto &row : table.rows)
        {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                const Cell &c = row[i];
                if (const auto *s = std::get_if<std::string>(&c))
                    obj[table.columns[i]] = *s;
                else if (const auto *n = std::get_if<std::int64_t>(&c))
                    obj[table.columns[i]] = *n;
                else
                {
                    const double x = std::get<double>(c);
                    // Round to 12 significant digits; the writer then emits the shortest form.
                    obj[table.columns[i]] = std::isfinite(x) ? std::strtod(format_number(x).c_str(), nullptr) : x;
                }
            }
            doc["rows"].push_back(std::move(obj));
        }
        return doc.dump(2) + "\n";
    }
}
