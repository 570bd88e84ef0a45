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

#ifndef FIMOPT_EXPERIMENTS_HPP
#define FIMOPT_EXPERIMENTS_HPP

#include "fimopt/miso.hpp"
#include "fimopt/scenario.hpp"
#include "fimopt/table.hpp"

#include <optional>

namespace fimopt
{
    inline constexpr const char *tool_version = "0.1.0";

    struct ExperimentConfig
    {
        ScenarioConfig scenario;
        SurfaceOptimizerConfig surface;
        // max_iterations, threshold and metric; the inner solver is taken from `surface`.
        AlternatingConfig alternating;
        std::size_t trials = 500;
        std::uint64_t seed = 1;
        std::size_t threads = 1;
        // Abort on a degenerate scenario instead of skipping the trial.
        bool strict = false;

        void validate() const;
    };

    // Seeds of the Monte Carlo trials, a pure function of (base, count).
    std::vector<std::uint64_t> trial_seeds(std::uint64_t base, std::size_t count);

    struct MethodOutcome
    {
        Method method = Method::kPso;
        double gain = 0.0;
        std::size_t iterations = 0; // outer iterations (MISO) or objective evaluations (SISO)
        bool converged = true;
    };

    struct TrialRecord
    {
        std::uint64_t seed = 0;
        ScenarioConfig scenario;
        double ris_siso = 0.0;
        std::vector<MethodOutcome> siso;
        // Effective MISO gains (divided by P); only filled when antennas > 1.
        std::optional<double> ris_miso;
        std::vector<MethodOutcome> miso;
        double wall_seconds = 0.0;
        bool degenerate = false;

        double siso_gain(Method m) const;
        double miso_gain(Method m) const;
    };

    // One paired trial: the rigid-RIS baseline and every requested method on the same channel.
    TrialRecord run_trial(const ExperimentConfig &cfg, std::uint64_t seed, const std::vector<Method> &methods);

    // All trials of cfg, in seed order regardless of cfg.threads.
    std::vector<TrialRecord> run_trials(const ExperimentConfig &cfg, const std::vector<Method> &methods);

    // z_n over a uniform deformation grid for every element, plus the PSO, MIGD and grid optima.
    Table run_element_landscape(const ExperimentConfig &cfg, std::uint64_t seed, std::size_t points);

    // Mean gain per morphing range and method; d_max = 0 is always part of the grid.
    Table run_gain_vs_dmax(const ExperimentConfig &cfg, std::vector<double> dmax_wavelengths,
                           const std::vector<Method> &methods);

    // Mean optimized gain per number of BS-FIM paths.
    Table run_gain_vs_paths(const ExperimentConfig &cfg, const std::vector<std::size_t> &paths_in);

    enum class HyperParameter
    {
        kMigdIntervals,
        kPsoParticles
    };

    std::string to_string(HyperParameter p);
    HyperParameter parse_hyperparameter(const std::string &name);

    struct HyperSweepSpec
    {
        HyperParameter parameter = HyperParameter::kMigdIntervals;
        std::vector<std::size_t> values;
        std::vector<double> dmax_wavelengths;
        std::size_t elements = 100;
        // An element passes when oracle - value <= tolerance * oracle.
        double tolerance = 1e-3;
        double required_fraction = 0.95;
        std::size_t oracle_points = 100001;
    };

    struct HyperSweepResult
    {
        Table table;
        // Per morphing range: smallest value whose pass fraction reaches required_fraction.
        std::vector<std::optional<std::size_t>> minimal;
    };

    HyperSweepResult run_hyperparameter_sweep(const ExperimentConfig &cfg, const HyperSweepSpec &spec);

    // Gain traces of the alternating optimization, one row per outer iteration.
    Table run_convergence(const ExperimentConfig &cfg);

    struct SampleStats
    {
        double mean = 0.0;
        double stddev = 0.0; // sample standard deviation
        double sem = 0.0;
        std::size_t count = 0;
    };

    SampleStats sample_stats(const std::vector<double> &x);
}

#endif
