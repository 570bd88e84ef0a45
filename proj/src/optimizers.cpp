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

#include "fimopt/optimizers.hpp"
#include "fimopt/errors.hpp"
#include "fimopt/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fimopt
{
    void PsoConfig::validate() const
    {
        if (particles < 2)
            throw InvalidArgument("PsoConfig: at least 2 particles are required");
        if (iterations < 1)
            throw InvalidArgument("PsoConfig: at least 1 iteration is required");
        if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(inertia))
            throw InvalidArgument("PsoConfig: acceleration coefficients must be non-negative");
    }

    void MigdConfig::validate() const
    {
        if (intervals < 1)
            throw InvalidArgument("MigdConfig: at least 1 interval is required");
        if (iterations < 1)
            throw InvalidArgument("MigdConfig: at least 1 iteration per interval is required");
        if (step && !(*step > 0.0))
            throw InvalidArgument("MigdConfig: step size must be positive");
        if (fd_offset && !(*fd_offset > 0.0))
            throw InvalidArgument("MigdConfig: finite-difference offset must be positive");
    }

    Optimum1d pso_1d(const Objective1d &objective, double d_max, const PsoConfig &cfg)
    {
        cfg.validate();
        if (!(d_max >= 0.0))
            throw InvalidArgument("pso_1d: d_max must be non-negative");
        Optimum1d out;
        if (d_max == 0.0)
        {
            out.value = objective(0.0);
            out.evaluations = 1;
            out.trace.push_back(out.value);
            return out;
        }

        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
        auto project = [d_max](double x) { return std::clamp(x, -d_max, d_max); };

        const std::size_t q = cfg.particles;
        std::vector<double> x(q), v(q), best_x(q), best_f(q);
        // Particle i starts uniformly inside the i-th of q equal slices of the interval.
        const double slice = 2.0 * d_max / static_cast<double>(q);
        for (std::size_t i = 0; i < q; ++i)
        {
            const double lo = -d_max + static_cast<double>(i) * slice;
            x[i] = project(uniform(lo, lo + slice));
            v[i] = uniform(-0.5 * d_max, 0.5 * d_max);
        }

        std::size_t leader = 0;
        for (std::size_t i = 0; i < q; ++i)
        {
            best_x[i] = x[i];
            best_f[i] = objective(x[i]);
            if (best_f[i] > best_f[leader])
                leader = i;
        }
        double swarm_x = best_x[leader];
        double swarm_f = best_f[leader];
        out.evaluations = q;
        out.trace.reserve(cfg.iterations);

        for (std::size_t t = 0; t < cfg.iterations; ++t)
        {
            for (std::size_t i = 0; i < q; ++i)
            {
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                v[i] = cfg.inertia * v[i] + cfg.c1 * r1 * (swarm_x - x[i]) + cfg.c2 * r2 * (best_x[i] - x[i]);
                v[i] = std::clamp(v[i], -d_max, d_max);
                const double moved = x[i] + v[i];
                x[i] = project(moved);
                if (x[i] != moved)
                    v[i] = 0.0; // absorbed by the wall

                const double f = objective(x[i]);
                if (f > best_f[i])
                {
                    best_f[i] = f;
                    best_x[i] = x[i];
                }
            }
            out.evaluations += q;
            // synchronous swarm-best update
            for (std::size_t i = 0; i < q; ++i)
                if (best_f[i] > swarm_f)
                {
                    swarm_f = best_f[i];
                    swarm_x = best_x[i];
                }
            out.trace.push_back(swarm_f);
        }
        out.position = swarm_x;
        out.value = swarm_f;
        return out;
    }

    Optimum1d migd_1d(const Objective1d &objective, const MigdConfig &cfg, double d_max)
    {
        cfg.validate();
        if (!(d_max >= 0.0))
            throw InvalidArgument("migd_1d: d_max must be non-negative");
        Optimum1d out;
        if (d_max == 0.0)
        {
            out.value = objective(0.0);
            out.evaluations = 1;
            out.trace.push_back(out.value);
            return out;
        }

        const auto intervals = static_cast<double>(cfg.intervals);
        const double length = 2.0 * d_max / intervals;
        const double step0 = cfg.step.value_or(length / 10.0);
        const double xi = cfg.fd_offset.value_or(1e-5 * length);

        bool have_best = false;
        for (std::size_t j = 0; j < cfg.intervals; ++j)
        {
            const double lo = -d_max + static_cast<double>(j) * length;
            const double hi = j + 1 == cfg.intervals ? d_max : lo + length;
            double x = 0.5 * (lo + hi);
            double fx = objective(x);
            ++out.evaluations;
            double step = step0;

            for (std::size_t it = 0; it < cfg.iterations; ++it)
            {
                double gradient;
                if (x + xi <= d_max)
                    gradient = (objective(x + xi) - fx) / xi;
                else
                    gradient = (fx - objective(x - xi)) / xi;
                ++out.evaluations;
                if (gradient == 0.0 || !std::isfinite(gradient))
                    break;

                // Step of length `step` along the ascent direction; halve it whenever the
                // move does not improve the objective.
                const double candidate = std::clamp(x + std::copysign(step, gradient), lo, hi);
                const double fc = objective(candidate);
                ++out.evaluations;
                if (fc > fx)
                {
                    x = candidate;
                    fx = fc;
                }
                else
                {
                    step *= 0.5;
                }
            }

            if (!have_best || fx > out.value)
            {
                out.value = fx;
                out.position = x;
                have_best = true;
            }
            out.trace.push_back(out.value);
        }
        return out;
    }

    Optimum1d grid_oracle(const Objective1d &objective, double d_max, std::size_t points)
    {
        if (points < 2)
            throw InvalidArgument("grid_oracle: at least 2 points are required");
        if (!(d_max >= 0.0))
            throw InvalidArgument("grid_oracle: d_max must be non-negative");
        Optimum1d out;
        const double spacing = 2.0 * d_max / static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i)
        {
            const double x = i + 1 == points ? d_max : -d_max + static_cast<double>(i) * spacing;
            const double f = objective(x);
            if (i == 0 || f > out.value)
            {
                out.value = f;
                out.position = x;
            }
        }
        out.evaluations = points;
        out.trace.push_back(out.value);
        return out;
    }

    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::kPso:
            return "pso";
        case Method::kMigd:
            return "migd";
        case Method::kGrid:
            return "grid";
        }
        return "unknown";
    }

    Method parse_method(const std::string &name)
    {
        if (name == "pso")
            return Method::kPso;
        if (name == "migd")
            return Method::kMigd;
        if (name == "grid")
            return Method::kGrid;
        throw InvalidArgument("unknown optimization method '" + name + "'");
    }

    ElementSolution solve_elements(std::size_t count, double d_max,
                                   const std::function<Objective1d(std::size_t)> &objective_for,
                                   const SurfaceOptimizerConfig &cfg, double wavelength)
    {
        if (cfg.method == Method::kPso)
            cfg.pso.validate();
        if (cfg.method == Method::kMigd)
            cfg.migd.validate();

        std::vector<Optimum1d> optima(count);
        parallel_for(count, cfg.threads, [&](std::size_t n) {
            const Objective1d f = objective_for(n);
            Optimum1d best;
            switch (cfg.method)
            {
            case Method::kPso:
            {
                PsoConfig pso = cfg.pso;
                pso.seed ^= static_cast<std::uint64_t>(n);
                best = pso_1d(f, d_max, pso);
                break;
            }
            case Method::kMigd:
            {
                MigdConfig migd = cfg.migd;
                if (!migd.fd_offset && wavelength > 0.0)
                    migd.fd_offset = 1e-6 * wavelength;
                best = migd_1d(f, migd, d_max);
                break;
            }
            case Method::kGrid:
                best = grid_oracle(f, d_max, cfg.grid_points);
                break;
            }
            if (cfg.inject_zero)
            {
                const double at_zero = f(0.0);
                ++best.evaluations;
                if (at_zero > best.value)
                {
                    best.value = at_zero;
                    best.position = 0.0;
                }
            }
            optima[n] = std::move(best);
        });

        ElementSolution out;
        out.positions.resize(static_cast<Eigen::Index>(count));
        out.values.resize(static_cast<Eigen::Index>(count));
        std::size_t steps = 0;
        for (std::size_t n = 0; n < count; ++n)
        {
            out.positions[static_cast<Eigen::Index>(n)] = optima[n].position;
            out.values[static_cast<Eigen::Index>(n)] = optima[n].value;
            out.evaluations += optima[n].evaluations;
            steps = std::max(steps, optima[n].trace.size());
        }
        for (std::size_t t = 0; t < steps; ++t)
        {
            double root_sum = 0.0;
            for (const auto &o : optima)
                if (!o.trace.empty())
                    root_sum += std::sqrt(std::max(0.0, o.trace[std::min(t, o.trace.size() - 1)]));
            out.trace.push_back(root_sum * root_sum);
        }
        return out;
    }

    OptimizationResult optimize_surface_siso(const PathBundle &paths, const FimGeometry &geom,
                                             const SurfaceOptimizerConfig &cfg)
    {
        paths.validate();
        const std::size_t count = geom.size();
        std::vector<PerElementObjective> objectives;
        objectives.reserve(count);
        for (std::size_t n = 0; n < count; ++n)
            objectives.emplace_back(paths, geom, n);

        ElementSolution sol = solve_elements(
            count, geom.d_max(),
            [&](std::size_t n) -> Objective1d {
                const PerElementObjective *obj = &objectives[n];
                return [obj](double d) { return obj->evaluate(d); };
            },
            cfg, geom.wavelength());

        SurfaceShape shape(sol.positions, geom);
        PhaseProfile phases = optimal_phases_siso(paths, shape, geom);
        const double gain = cascaded_gain_siso(paths, shape, phases, geom);
        return OptimizationResult{std::move(shape), std::move(phases), gain, std::move(sol.values),
                                  std::move(sol.trace), sol.evaluations};
    }
}
