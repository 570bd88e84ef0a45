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

// Command-line front end: runs one experiment and writes its table as CSV or JSON.

#include "fimopt/config.hpp"
#include "fimopt/errors.hpp"
#include "fimopt/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace fimopt;

namespace
{
    template <typename T>
    std::string join(const std::vector<T> &v)
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << v[i];
        return os.str();
    }

    // Flags that map one-to-one onto configuration keys. Values stay as text so the config
    // parser does all validation and reports every error the same way.
    struct Overrides
    {
        std::vector<std::pair<std::string, std::optional<std::string>>> values = {
            {"seed", {}},          {"trials", {}},           {"ny", {}},          {"nz", {}},
            {"paths_in", {}},      {"paths_out", {}},        {"antennas", {}},    {"dmax_wavelengths", {}},
            {"method", {}},        {"threads", {}},          {"pso_particles", {}}, {"pso_iterations", {}},
            {"migd_intervals", {}}, {"migd_iterations", {}}, {"grid_points", {}}, {"max_iterations", {}},
            {"threshold", {}},     {"convergence_metric", {}}, {"power_dbm", {}},
        };

        std::optional<std::string> &operator[](const std::string &key)
        {
            for (auto &[k, v] : values)
                if (k == key)
                    return v;
            throw std::logic_error("unknown override " + key);
        }
    };

    std::string flag_name(std::string key)
    {
        for (char &c : key)
            if (c == '_')
                c = '-';
        return "--" + key;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"fimopt " + std::string(tool_version) +
                 ": shape and phase optimization for flexible intelligent metasurfaces.\n"
                 "Every experiment writes one table (CSV with '# key: value' metadata, or JSON)."};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string config_file;
    std::string output = "csv";
    std::string out_file;
    bool strict = false;
    std::vector<std::string> sets;
    Overrides over;

    app.add_option("--config", config_file, "Read 'key = value' settings from a file; flags override it")
        ->check(CLI::ExistingFile);
    app.add_option("--output", output, "Table format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out-file", out_file, "Write the table here instead of stdout");
    app.add_flag("--strict", strict, "Exit with status 2 on a degenerate channel instead of skipping the trial");
    app.add_option("--set", sets, "Any configuration key, as key=value (repeatable)");

    const std::vector<std::pair<std::string, std::string>> help = {
        {"seed", "Base seed; trial seeds derive from it"},
        {"trials", "Monte Carlo trials per grid point"},
        {"ny", "Elements along y"},
        {"nz", "Elements along z"},
        {"paths_in", "BS-FIM paths R"},
        {"paths_out", "FIM-UE paths K"},
        {"antennas", "BS antennas M; above 1 the MISO link is optimized too"},
        {"dmax_wavelengths", "Morphing range in wavelengths"},
        {"method", "Per-element solver: pso, migd or grid"},
        {"threads", "Worker threads; output does not depend on it"},
        {"pso_particles", "PSO swarm size"},
        {"pso_iterations", "PSO iterations"},
        {"migd_intervals", "MIGD sub-intervals"},
        {"migd_iterations", "MIGD ascent steps per sub-interval"},
        {"grid_points", "Grid search points"},
        {"max_iterations", "Outer iteration cap of the MISO alternating loop"},
        {"threshold", "Stopping threshold of the MISO alternating loop"},
        {"convergence_metric",
         "relative (default): stop when the gain grows by at most threshold * previous gain; "
         "absolute: stop when it grows by less than threshold"},
        {"power_dbm", "Transmit power [dBm]"},
    };
    for (const auto &[key, text] : help)
        app.add_option(flag_name(key), over[key], text)->type_name("VALUE");

    std::size_t points = 1001;
    auto *landscape = app.add_subcommand("landscape", "z_n over the deformation range for one channel (seed = --seed)");
    landscape->add_option("--points", points, "Curve points per element")->check(CLI::Range(2, 100000000));

    std::vector<double> dmax_grid = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<std::string> methods = {"pso", "migd"};
    auto *vs_dmax = app.add_subcommand("gain-vs-dmax", "Mean gain versus the morphing range");
    vs_dmax->add_option("--grid", dmax_grid, "Morphing ranges in wavelengths; 0 is always added")->delimiter(',');
    vs_dmax->add_option("--methods", methods, "Solvers to compare")
        ->delimiter(',')
        ->check(CLI::IsMember({"pso", "migd", "grid"}));

    std::vector<std::size_t> paths_grid = {1, 2, 3, 4, 5};
    auto *vs_paths = app.add_subcommand("gain-vs-paths", "Mean gain versus the number of BS-FIM paths");
    vs_paths->add_option("--grid", paths_grid, "Path counts")->delimiter(',');

    HyperSweepSpec spec;
    spec.values = {1, 2, 5, 10, 20, 50, 100};
    spec.dmax_wavelengths = {0.5, 1.0, 2.0, 3.0};
    std::string parameter = "intervals";
    auto *hyper = app.add_subcommand("hyperparam", "Smallest MIGD interval count or PSO swarm size that meets the oracle");
    hyper->add_option("--parameter", parameter, "intervals or particles")
        ->check(CLI::IsMember({"intervals", "particles"}));
    hyper->add_option("--values", spec.values, "Candidate values")->delimiter(',');
    hyper->add_option("--grid", spec.dmax_wavelengths, "Morphing ranges in wavelengths")->delimiter(',');
    hyper->add_option("--elements", spec.elements, "Elements per morphing range");
    hyper->add_option("--tolerance", spec.tolerance, "Allowed relative shortfall against the grid oracle");
    hyper->add_option("--required-fraction", spec.required_fraction, "Fraction of elements that must pass");
    hyper->add_option("--oracle-points", spec.oracle_points, "Grid oracle resolution");

    auto *converge = app.add_subcommand("converge", "Gain trace of the MISO alternating loop for each trial");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    ExperimentConfig cfg;
    Table table;
    try
    {
        if (!config_file.empty())
            apply_config_file(cfg, config_file);
        for (const auto &[key, value] : over.values)
            if (value)
                set_config_value(cfg, key, *value);
        for (const auto &kv : sets)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw InvalidArgument("--set expects key=value, got '" + kv + "'");
            set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        cfg.strict = cfg.strict || strict;
        cfg.validate();

        if (landscape->parsed())
            table = run_element_landscape(cfg, cfg.seed, points);
        else if (vs_dmax->parsed())
        {
            std::vector<Method> m;
            for (const auto &name : methods)
                m.push_back(parse_method(name));
            table = run_gain_vs_dmax(cfg, dmax_grid, m);
        }
        else if (vs_paths->parsed())
            table = run_gain_vs_paths(cfg, paths_grid);
        else if (hyper->parsed())
        {
            spec.parameter = parse_hyperparameter(parameter);
            table = run_hyperparameter_sweep(cfg, spec).table;
        }
        else if (converge->parsed())
            table = run_convergence(cfg);
    }
    catch (const DegenerateScenario &e)
    {
        std::cerr << "fimopt: degenerate scenario: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "fimopt: " << e.what() << '\n';
        return 1;
    }

    const std::string text = output == "json" ? to_json(table) : to_csv(table);
    if (out_file.empty())
    {
        std::cout << text;
        return std::cout.good() ? 0 : 1;
    }
    std::ofstream out(out_file, std::ios::binary);
    out << text;
    if (!out)
    {
        std::cerr << "fimopt: cannot write " << out_file << '\n';
        return 1;
    }
    return 0;
}
