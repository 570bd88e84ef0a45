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

#ifndef FIMOPT_OPTIMIZERS_HPP
#define FIMOPT_OPTIMIZERS_HPP

#include "fimopt/gain.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fimopt
{
    using Objective1d = std::function<double(double)>;

    struct PsoConfig
    {
        std::size_t particles = 20;
        double inertia = 0.8;
        double c1 = 2.0; // pull towards the swarm best
        double c2 = 2.0; // pull towards the particle's own best
        std::size_t iterations = 200;
        std::uint64_t seed = 0;

        void validate() const;
    };

    struct MigdConfig
    {
        std::size_t intervals = 50;
        std::size_t iterations = 60; // per interval
        // Unset means (2 d_max / intervals) / 10.
        std::optional<double> step;
        // Unset means 1e-6 wavelengths when known, else 1e-5 of the interval length.
        std::optional<double> fd_offset;
        std::uint64_t seed = 0; // MIGD is deterministic; kept for a uniform config surface

        void validate() const;
    };

    struct Optimum1d
    {
        double position = 0.0;
        double value = 0.0;
        // Best value after each iteration (PSO), interval (MIGD) or the single grid pass.
        std::vector<double> trace;
        std::size_t evaluations = 0;
    };

    // Particle swarm over [-d_max, d_max]. Initial positions are stratified over the interval,
    // velocities are clamped to d_max, and a particle pushed past a bound is projected onto it
    // with its velocity zeroed. Deterministic for a fixed seed.
    Optimum1d pso_1d(const Objective1d &objective, double d_max, const PsoConfig &cfg);

    // Multi-interval gradient ascent: one projected ascent per sub-interval from its midpoint,
    // forward-difference gradients, best candidate wins.
    Optimum1d migd_1d(const Objective1d &objective, const MigdConfig &cfg, double d_max);

    // Uniform grid including both endpoints; ties go to the smallest position.
    Optimum1d grid_oracle(const Objective1d &objective, double d_max, std::size_t points);

    enum class Method
    {
        kPso,
        kMigd,
        kGrid
    };

    std::string to_string(Method m);
    Method parse_method(const std::string &name);

    struct SurfaceOptimizerConfig
    {
        Method method = Method::kPso;
        PsoConfig pso;
        MigdConfig migd;
        std::size_t grid_points = 10001;
        // Evaluate d_n = 0 as well and keep it when it is strictly better.
        bool inject_zero = true;
        // Worker threads for the per-element problems; results do not depend on it.
        std::size_t threads = 1;
    };

    struct OptimizationResult
    {
        SurfaceShape shape;
        PhaseProfile phases;
        double gain = 0.0;
        RVector element_gains;
        // (sum_n sqrt(best z_n so far))^2 per solver step
        std::vector<double> trace;
        std::size_t evaluations = 0;
    };

    struct ElementSolution
    {
        RVector positions;
        RVector values;
        std::vector<double> trace;
        std::size_t evaluations = 0;
    };

    // Solves max_{|d| <= d_max} f_n(d) independently for n = 0..count-1 with the configured
    // 1-D method. Element n uses seed cfg.<method>.seed ^ n.
    ElementSolution solve_elements(std::size_t count, double d_max,
                                   const std::function<Objective1d(std::size_t)> &objective_for,
                                   const SurfaceOptimizerConfig &cfg, double wavelength);

    // Joint shape and phase optimization of the SISO link.
    OptimizationResult optimize_surface_siso(const PathBundle &paths, const FimGeometry &geom,
                                             const SurfaceOptimizerConfig &cfg);
}

#endif
