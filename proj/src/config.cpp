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

#include "fimopt/config.hpp"
#include "fimopt/errors.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

namespace fimopt
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return "";
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double parse_double(const std::string &key, const std::string &v)
        {
            errno = 0;
            char *end = nullptr;
            const double x = std::strtod(v.c_str(), &end);
            if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
                throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
            return x;
        }

        std::uint64_t parse_uint(const std::string &key, const std::string &v)
        {
            std::uint64_t x = 0;
            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
                throw InvalidArgument("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
            return x;
        }

        bool parse_bool(const std::string &key, const std::string &v)
        {
            if (v == "true" || v == "1" || v == "yes")
                return true;
            if (v == "false" || v == "0" || v == "no")
                return false;
            throw InvalidArgument("config: '" + key + "' expects true or false, got '" + v + "'");
        }

        std::string show(double x) { return format_number(x); }
        std::string show(std::uint64_t x) { return std::to_string(x); }
        std::string show(bool x) { return x ? "true" : "false"; }

        struct Field
        {
            std::function<void(ExperimentConfig &, const std::string &, const std::string &)> set;
            std::function<std::string(const ExperimentConfig &)> get;
        };

        template <typename Member>
        Field size_field(Member member)
        {
            return {[member](ExperimentConfig &c, const std::string &k, const std::string &v) {
                        member(c) = static_cast<std::size_t>(parse_uint(k, v));
                    },
                    [member](const ExperimentConfig &c) {
                        ExperimentConfig copy = c;
                        return show(static_cast<std::uint64_t>(member(copy)));
                    }};
        }

        template <typename Member>
        Field double_field(Member member)
        {
            return {[member](ExperimentConfig &c, const std::string &k, const std::string &v) {
                        member(c) = parse_double(k, v);
                    },
                    [member](const ExperimentConfig &c) {
                        ExperimentConfig copy = c;
                        return show(member(copy));
                    }};
        }

        // Optional doubles print as "auto" when unset.
        template <typename Member>
        Field optional_field(Member member)
        {
            return {[member](ExperimentConfig &c, const std::string &k, const std::string &v) {
                        if (v == "auto")
                            member(c).reset();
                        else
                            member(c) = parse_double(k, v);
                    },
                    [member](const ExperimentConfig &c) {
                        ExperimentConfig copy = c;
                        const auto &o = member(copy);
                        return o ? show(*o) : std::string("auto");
                    }};
        }

        using Entry = std::pair<std::string, Field>;

        const std::vector<Entry> &fields()
        {
            static const std::vector<Entry> table = [] {
                std::vector<Entry> f;
                f.emplace_back("seed", Field{[](ExperimentConfig &c, const std::string &k, const std::string &v) {
                                                 c.seed = parse_uint(k, v);
                                             },
                                             [](const ExperimentConfig &c) { return show(c.seed); }});
                f.emplace_back("trials", size_field([](ExperimentConfig &c) -> std::size_t & { return c.trials; }));
                f.emplace_back("threads", size_field([](ExperimentConfig &c) -> std::size_t & { return c.threads; }));
                f.emplace_back("strict", Field{[](ExperimentConfig &c, const std::string &k, const std::string &v) {
                                                   c.strict = parse_bool(k, v);
                                               },
                                               [](const ExperimentConfig &c) { return show(c.strict); }});
                f.emplace_back("ny", size_field([](ExperimentConfig &c) -> std::size_t & { return c.scenario.n_y; }));
                f.emplace_back("nz", size_field([](ExperimentConfig &c) -> std::size_t & { return c.scenario.n_z; }));
                f.emplace_back("paths_in",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.scenario.paths_in; }));
                f.emplace_back("paths_out",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.scenario.paths_out; }));
                f.emplace_back("antennas",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.scenario.antennas; }));
                f.emplace_back("dmax_wavelengths", double_field([](ExperimentConfig &c) -> double & {
                                   return c.scenario.dmax_wavelengths;
                               }));
                f.emplace_back("d_bf", double_field([](ExperimentConfig &c) -> double & { return c.scenario.d_bf; }));
                f.emplace_back("d_fu", double_field([](ExperimentConfig &c) -> double & { return c.scenario.d_fu; }));
                f.emplace_back("c0_db", double_field([](ExperimentConfig &c) -> double & { return c.scenario.c0_db; }));
                f.emplace_back("d0", double_field([](ExperimentConfig &c) -> double & { return c.scenario.d0; }));
                f.emplace_back("exponent_bf",
                               double_field([](ExperimentConfig &c) -> double & { return c.scenario.exponent_bf; }));
                f.emplace_back("exponent_fu",
                               double_field([](ExperimentConfig &c) -> double & { return c.scenario.exponent_fu; }));
                f.emplace_back("wavelength",
                               double_field([](ExperimentConfig &c) -> double & { return c.scenario.wavelength; }));
                f.emplace_back("noise_dbm",
                               double_field([](ExperimentConfig &c) -> double & { return c.scenario.noise_dbm; }));
                f.emplace_back("power_dbm",
                               double_field([](ExperimentConfig &c) -> double & { return c.scenario.power_dbm; }));
                f.emplace_back("method", Field{[](ExperimentConfig &c, const std::string &, const std::string &v) {
                                                   c.surface.method = parse_method(v);
                                               },
                                               [](const ExperimentConfig &c) { return to_string(c.surface.method); }});
                f.emplace_back("inject_zero",
                               Field{[](ExperimentConfig &c, const std::string &k, const std::string &v) {
                                         c.surface.inject_zero = parse_bool(k, v);
                                     },
                                     [](const ExperimentConfig &c) { return show(c.surface.inject_zero); }});
                f.emplace_back("grid_points",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.surface.grid_points; }));
                f.emplace_back("pso_particles",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.surface.pso.particles; }));
                f.emplace_back("pso_iterations", size_field([](ExperimentConfig &c) -> std::size_t & {
                                   return c.surface.pso.iterations;
                               }));
                f.emplace_back("pso_inertia",
                               double_field([](ExperimentConfig &c) -> double & { return c.surface.pso.inertia; }));
                f.emplace_back("pso_c1", double_field([](ExperimentConfig &c) -> double & { return c.surface.pso.c1; }));
                f.emplace_back("pso_c2", double_field([](ExperimentConfig &c) -> double & { return c.surface.pso.c2; }));
                f.emplace_back("migd_intervals",
                               size_field([](ExperimentConfig &c) -> std::size_t & { return c.surface.migd.intervals; }));
                f.emplace_back("migd_iterations", size_field([](ExperimentConfig &c) -> std::size_t & {
                                   return c.surface.migd.iterations;
                               }));
                f.emplace_back("migd_step", optional_field([](ExperimentConfig &c) -> std::optional<double> & {
                                   return c.surface.migd.step;
                               }));
                f.emplace_back("migd_fd_offset", optional_field([](ExperimentConfig &c) -> std::optional<double> & {
                                   return c.surface.migd.fd_offset;
                               }));
                f.emplace_back("max_iterations", size_field([](ExperimentConfig &c) -> std::size_t & {
                                   return c.alternating.max_iterations;
                               }));
                f.emplace_back("threshold",
                               double_field([](ExperimentConfig &c) -> double & { return c.alternating.threshold; }));
                f.emplace_back("convergence_metric",
                               Field{[](ExperimentConfig &c, const std::string &k, const std::string &v) {
                                         if (v == "relative")
                                             c.alternating.metric = ConvergenceMetric::kRelative;
                                         else if (v == "absolute")
                                             c.alternating.metric = ConvergenceMetric::kAbsolute;
                                         else
                                             throw InvalidArgument("config: '" + k +
                                                                   "' expects relative or absolute, got '" + v + "'");
                                     },
                                     [](const ExperimentConfig &c) {
                                         return std::string(c.alternating.metric == ConvergenceMetric::kRelative
                                                                ? "relative"
                                                                : "absolute");
                                     }});
                return f;
            }();
            return table;
        }
    }

    void set_config_value(ExperimentConfig &cfg, const std::string &key, const std::string &value)
    {
        for (const auto &[name, field] : fields())
            if (name == key)
            {
                field.set(cfg, key, trim(value));
                return;
            }
        throw InvalidArgument("config: unknown key '" + key + "'");
    }

    void apply_config(ExperimentConfig &cfg, std::istream &in)
    {
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line))
        {
            ++number;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw InvalidArgument("config line " + std::to_string(number) + ": expected 'key = value'");
            try
            {
                set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
            }
            catch (const InvalidArgument &e)
            {
                throw InvalidArgument("config line " + std::to_string(number) + ": " + e.what());
            }
        }
    }

    void apply_config_file(ExperimentConfig &cfg, const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw InvalidArgument("config: cannot open '" + path + "'");
        apply_config(cfg, in);
    }

    std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig &cfg)
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto &[name, field] : fields())
            if (name != "threads") // output must not depend on the worker count
                out.emplace_back(name, field.get(cfg));
        return out;
    }
}
