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

#include "fimopt/experiments.hpp"
#include "fimopt/config.hpp"
#include "fimopt/errors.hpp"
#include "fimopt/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace fimopt
{
    void ExperimentConfig::validate() const
    {
        scenario.validate();
        alternating.validate();
        if (trials < 1)
            throw InvalidArgument("ExperimentConfig: at least one trial is required");
        if (surface.grid_points < 2)
            throw InvalidArgument("ExperimentConfig: grid oracle needs at least 2 points");
        surface.pso.validate();
        surface.migd.validate();
    }

    std::vector<std::uint64_t> trial_seeds(std::uint64_t base, std::size_t count)
    {
        std::vector<std::uint64_t> seeds(count);
        for (std::size_t i = 0; i < count; ++i)
            seeds[i] = mix_seed(base + static_cast<std::uint64_t>(i));
        return seeds;
    }

    namespace
    {
        const MethodOutcome &find_outcome(const std::vector<MethodOutcome> &v, Method m)
        {
            for (const auto &o : v)
                if (o.method == m)
                    return o;
            throw InvalidArgument("TrialRecord: method " + to_string(m) + " was not run");
        }

        AlternatingConfig alternating_for(const ExperimentConfig &cfg, Method method)
        {
            AlternatingConfig alt = cfg.alternating;
            alt.surface = cfg.surface;
            alt.surface.method = method;
            alt.surface.threads = 1;
            return alt;
        }

        void add_common_metadata(Table &t, const std::string &experiment, const ExperimentConfig &cfg,
                                 const std::vector<std::uint64_t> &seeds)
        {
            t.add_metadata("tool", std::string("fimopt ") + tool_version);
            t.add_metadata("experiment", experiment);
            for (const auto &[k, v] : config_entries(cfg))
                t.add_metadata("config." + k, v);
            std::string list;
            for (std::size_t i = 0; i < seeds.size(); ++i)
                list += (i ? " " : "") + std::to_string(seeds[i]);
            t.add_metadata("seeds", list);
        }

        std::int64_t as_int(std::size_t x) { return static_cast<std::int64_t>(x); }

        double to_db(double x) { return x > 0.0 ? linear_to_db(x) : -std::numeric_limits<double>::infinity(); }
    }

    double TrialRecord::siso_gain(Method m) const { return find_outcome(siso, m).gain; }
    double TrialRecord::miso_gain(Method m) const { return find_outcome(miso, m).gain; }

    SampleStats sample_stats(const std::vector<double> &x)
    {
        SampleStats s;
        s.count = x.size();
        if (x.empty())
            return s;
        double sum = 0.0;
        for (double v : x)
            sum += v;
        s.mean = sum / static_cast<double>(x.size());
        if (x.size() > 1)
        {
            double ss = 0.0;
            for (double v : x)
                ss += (v - s.mean) * (v - s.mean);
            s.stddev = std::sqrt(ss / static_cast<double>(x.size() - 1));
            s.sem = s.stddev / std::sqrt(static_cast<double>(x.size()));
        }
        return s;
    }

    TrialRecord run_trial(const ExperimentConfig &cfg, std::uint64_t seed, const std::vector<Method> &methods)
    {
        const auto start = std::chrono::steady_clock::now();
        TrialRecord rec;
        rec.seed = seed;
        rec.scenario = cfg.scenario;

        const PathBundle paths = sample_scenario(cfg.scenario, seed);
        const FimGeometry geom = cfg.scenario.geometry();
        const SurfaceShape flat = SurfaceShape::zeros(geom);
        rec.ris_siso = cascaded_gain_siso(paths, flat, optimal_phases_siso(paths, flat, geom), geom);

        for (Method m : methods)
        {
            SurfaceOptimizerConfig sc = cfg.surface;
            sc.method = m;
            sc.threads = 1;
            const OptimizationResult r = optimize_surface_siso(paths, geom, sc);
            rec.siso.push_back({m, r.gain, r.evaluations, true});
        }

        if (cfg.scenario.antennas > 1)
        {
            const double power = link_budget(cfg.scenario).power_w;
            const std::size_t m = cfg.scenario.antennas;
            const Method inner = methods.empty() ? cfg.surface.method : methods.front();
            const AlternatingResult rigid =
                alternating_optimize(paths, geom.with_d_max(0.0), m, power, alternating_for(cfg, inner));
            rec.ris_miso = rigid.effective_gain();
            for (Method method : methods)
            {
                const AlternatingResult r = alternating_optimize(paths, geom, m, power, alternating_for(cfg, method));
                rec.miso.push_back({method, r.effective_gain(), r.iterations, r.converged});
            }
        }

        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rec;
    }

    std::vector<TrialRecord> run_trials(const ExperimentConfig &cfg, const std::vector<Method> &methods)
    {
        cfg.validate();
        const auto seeds = trial_seeds(cfg.seed, cfg.trials);
        std::vector<TrialRecord> records(seeds.size());
        parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
            try
            {
                records[i] = run_trial(cfg, seeds[i], methods);
            }
            catch (const DegenerateScenario &)
            {
                if (cfg.strict)
                    throw;
                records[i].seed = seeds[i];
                records[i].scenario = cfg.scenario;
                records[i].degenerate = true;
            }
        });
        return records;
    }

    Table run_element_landscape(const ExperimentConfig &cfg, std::uint64_t seed, std::size_t points)
    {
        cfg.validate();
        if (points < 2)
            throw InvalidArgument("run_element_landscape: at least 2 curve points are required");
        const PathBundle paths = sample_scenario(cfg.scenario, seed);
        const FimGeometry geom = cfg.scenario.geometry();
        const double d_max = geom.d_max();
        const double lambda = geom.wavelength();

        std::vector<PerElementObjective> objectives;
        for (std::size_t n = 0; n < geom.size(); ++n)
            objectives.emplace_back(paths, geom, n);
        auto objective_for = [&](std::size_t n) -> Objective1d {
            const PerElementObjective *obj = &objectives[n];
            return [obj](double d) { return obj->evaluate(d); };
        };

        Table t;
        add_common_metadata(t, "landscape", cfg, {seed});
        t.add_metadata("curve_points", std::to_string(points));
        t.columns = {"element", "kind", "d_m", "d_wavelengths", "z"};

        const double spacing = 2.0 * d_max / static_cast<double>(points - 1);
        for (std::size_t n = 0; n < geom.size(); ++n)
            for (std::size_t i = 0; i < points; ++i)
            {
                const double d = i + 1 == points ? d_max : -d_max + static_cast<double>(i) * spacing;
                t.add_row({as_int(n), std::string("curve"), d, d / lambda, objectives[n].evaluate(d)});
            }

        for (Method m : {Method::kPso, Method::kMigd, Method::kGrid})
        {
            SurfaceOptimizerConfig sc = cfg.surface;
            sc.method = m;
            sc.threads = cfg.threads;
            const ElementSolution sol = solve_elements(geom.size(), d_max, objective_for, sc, lambda);
            for (std::size_t n = 0; n < geom.size(); ++n)
            {
                const double d = sol.positions[static_cast<Eigen::Index>(n)];
                t.add_row({as_int(n), to_string(m), d, d / lambda, sol.values[static_cast<Eigen::Index>(n)]});
            }
        }
        return t;
    }

    Table run_gain_vs_dmax(const ExperimentConfig &cfg, std::vector<double> dmax_wavelengths,
                           const std::vector<Method> &methods)
    {
        if (std::find(dmax_wavelengths.begin(), dmax_wavelengths.end(), 0.0) == dmax_wavelengths.end())
            dmax_wavelengths.insert(dmax_wavelengths.begin(), 0.0);

        Table t;
        add_common_metadata(t, "gain-vs-dmax", cfg, trial_seeds(cfg.seed, cfg.trials));
        t.columns = {"dmax_wavelengths", "dmax_m", "link", "method", "trials",
                     "mean_gain", "std_gain", "mean_gain_db", "gain_over_ris_db"};

        std::size_t degenerate = 0;
        for (double dmax : dmax_wavelengths)
        {
            ExperimentConfig c = cfg;
            c.scenario.dmax_wavelengths = dmax;
            const auto records = run_trials(c, methods);

            std::vector<const TrialRecord *> valid;
            for (const auto &r : records)
                if (!r.degenerate)
                    valid.push_back(&r);
            degenerate += records.size() - valid.size();

            auto emit = [&](const std::string &link, const std::string &method, const std::vector<double> &gains,
                            double ris_mean) {
                const SampleStats s = sample_stats(gains);
                t.add_row({dmax, dmax * c.scenario.wavelength, link, method, as_int(s.count), s.mean, s.stddev,
                           to_db(s.mean), to_db(s.mean) - to_db(ris_mean)});
            };

            std::vector<double> ris;
            for (const auto *r : valid)
                ris.push_back(r->ris_siso);
            const double ris_mean = sample_stats(ris).mean;
            emit("siso", "ris", ris, ris_mean);
            for (Method m : methods)
            {
                std::vector<double> g;
                for (const auto *r : valid)
                    g.push_back(r->siso_gain(m));
                emit("siso", to_string(m), g, ris_mean);
            }

            if (c.scenario.antennas > 1)
            {
                std::vector<double> ris_m;
                for (const auto *r : valid)
                    ris_m.push_back(*r->ris_miso);
                const double ris_m_mean = sample_stats(ris_m).mean;
                emit("miso", "ris", ris_m, ris_m_mean);
                for (Method m : methods)
                {
                    std::vector<double> g;
                    for (const auto *r : valid)
                        g.push_back(r->miso_gain(m));
                    emit("miso", to_string(m), g, ris_m_mean);
                }
            }
        }
        t.add_metadata("degenerate_trials", std::to_string(degenerate));
        return t;
    }

    Table run_gain_vs_paths(const ExperimentConfig &cfg, const std::vector<std::size_t> &paths_in)
    {
        Table t;
        add_common_metadata(t, "gain-vs-paths", cfg, trial_seeds(cfg.seed, cfg.trials));
        t.columns = {"paths_in", "link", "method", "trials", "mean_gain", "std_gain", "sem_gain", "mean_gain_db"};

        const Method method = cfg.surface.method;
        std::size_t degenerate = 0;
        for (std::size_t r_count : paths_in)
        {
            ExperimentConfig c = cfg;
            c.scenario.paths_in = r_count;
            const auto records = run_trials(c, {method});
            std::vector<double> siso, miso;
            for (const auto &r : records)
            {
                if (r.degenerate)
                {
                    ++degenerate;
                    continue;
                }
                siso.push_back(r.siso_gain(method));
                if (c.scenario.antennas > 1)
                    miso.push_back(r.miso_gain(method));
            }
            auto emit = [&](const std::string &link, const std::vector<double> &g) {
                const SampleStats s = sample_stats(g);
                t.add_row({as_int(r_count), link, to_string(method), as_int(s.count), s.mean, s.stddev, s.sem,
                           to_db(s.mean)});
            };
            emit("siso", siso);
            if (c.scenario.antennas > 1)
                emit("miso", miso);
        }
        t.add_metadata("degenerate_trials", std::to_string(degenerate));
        return t;
    }

    std::string to_string(HyperParameter p)
    {
        return p == HyperParameter::kMigdIntervals ? "intervals" : "particles";
    }

    HyperParameter parse_hyperparameter(const std::string &name)
    {
        if (name == "intervals")
            return HyperParameter::kMigdIntervals;
        if (name == "particles")
            return HyperParameter::kPsoParticles;
        throw InvalidArgument("unknown hyperparameter '" + name + "' (expected intervals or particles)");
    }

    HyperSweepResult run_hyperparameter_sweep(const ExperimentConfig &cfg, const HyperSweepSpec &spec)
    {
        cfg.validate();
        if (spec.values.empty() || spec.dmax_wavelengths.empty())
            throw InvalidArgument("run_hyperparameter_sweep: empty value or morphing-range grid");
        if (spec.elements < 1 || spec.oracle_points < 2)
            throw InvalidArgument("run_hyperparameter_sweep: need at least one element and two oracle points");
        if (!(spec.tolerance >= 0.0))
            throw InvalidArgument("run_hyperparameter_sweep: tolerance must be non-negative");
        for (std::size_t v : spec.values)
            if (v < (spec.parameter == HyperParameter::kPsoParticles ? 2u : 1u))
                throw InvalidArgument("run_hyperparameter_sweep: hyperparameter value too small");

        std::vector<std::size_t> values = spec.values;
        std::sort(values.begin(), values.end());

        const FimGeometry base = cfg.scenario.geometry();
        const std::size_t per_scenario = base.size();
        const std::size_t scenarios = (spec.elements + per_scenario - 1) / per_scenario;
        const auto seeds = trial_seeds(cfg.seed, scenarios);

        std::vector<PathBundle> bundles;
        for (auto s : seeds)
            bundles.push_back(sample_scenario(cfg.scenario, s));

        HyperSweepResult out;
        add_common_metadata(out.table, "hyperparam", cfg, seeds);
        out.table.add_metadata("parameter", to_string(spec.parameter));
        out.table.add_metadata("tolerance", format_number(spec.tolerance));
        out.table.add_metadata("required_fraction", format_number(spec.required_fraction));
        out.table.add_metadata("oracle_points", std::to_string(spec.oracle_points));
        out.table.columns = {"dmax_wavelengths", "parameter", "value", "elements", "pass_fraction", "minimal"};

        for (double dmax : spec.dmax_wavelengths)
        {
            const FimGeometry geom = base.with_d_max(dmax * cfg.scenario.wavelength);
            std::vector<PerElementObjective> objectives;
            for (std::size_t e = 0; e < spec.elements; ++e)
                objectives.emplace_back(bundles[e / per_scenario], geom, e % per_scenario);

            std::vector<double> oracle(spec.elements);
            std::vector<std::vector<char>> pass(values.size(), std::vector<char>(spec.elements, 0));
            parallel_for(spec.elements, cfg.threads, [&](std::size_t e) {
                const PerElementObjective *obj = &objectives[e];
                const Objective1d f = [obj](double d) { return obj->evaluate(d); };
                oracle[e] = grid_oracle(f, geom.d_max(), spec.oracle_points).value;
                const std::size_t n = e % per_scenario;
                for (std::size_t v = 0; v < values.size(); ++v)
                {
                    double value;
                    if (spec.parameter == HyperParameter::kMigdIntervals)
                    {
                        MigdConfig migd = cfg.surface.migd;
                        migd.intervals = values[v];
                        if (!migd.fd_offset)
                            migd.fd_offset = 1e-6 * geom.wavelength();
                        value = migd_1d(f, migd, geom.d_max()).value;
                    }
                    else
                    {
                        PsoConfig pso = cfg.surface.pso;
                        pso.particles = values[v];
                        pso.seed ^= static_cast<std::uint64_t>(n);
                        value = pso_1d(f, geom.d_max(), pso).value;
                    }
                    pass[v][e] = !std::isfinite(spec.tolerance) || oracle[e] - value <= spec.tolerance * oracle[e];
                }
            });

            std::optional<std::size_t> minimal;
            std::vector<double> fractions(values.size());
            for (std::size_t v = 0; v < values.size(); ++v)
            {
                const auto passed = std::count(pass[v].begin(), pass[v].end(), 1);
                fractions[v] = static_cast<double>(passed) / static_cast<double>(spec.elements);
                if (!minimal && fractions[v] >= spec.required_fraction)
                    minimal = values[v];
            }
            for (std::size_t v = 0; v < values.size(); ++v)
                out.table.add_row({dmax, to_string(spec.parameter), as_int(values[v]), as_int(spec.elements),
                                   fractions[v], std::int64_t{minimal && *minimal == values[v] ? 1 : 0}});
            out.minimal.push_back(minimal);
        }
        return out;
    }

    Table run_convergence(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const auto seeds = trial_seeds(cfg.seed, cfg.trials);
        const FimGeometry geom = cfg.scenario.geometry();
        const double power = link_budget(cfg.scenario).power_w;
        const AlternatingConfig alt = alternating_for(cfg, cfg.surface.method);

        std::vector<std::optional<AlternatingResult>> results(seeds.size());
        parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
            try
            {
                results[i] = alternating_optimize(sample_scenario(cfg.scenario, seeds[i]), geom,
                                                  cfg.scenario.antennas, power, alt);
            }
            catch (const DegenerateScenario &)
            {
                if (cfg.strict)
                    throw;
            }
        });

        Table t;
        add_common_metadata(t, "converge", cfg, seeds);
        t.columns = {"trial", "seed", "iteration", "gain", "effective_gain", "converged"};
        std::size_t degenerate = 0;
        for (std::size_t i = 0; i < seeds.size(); ++i)
        {
            if (!results[i])
            {
                ++degenerate;
                continue;
            }
            const auto &r = *results[i];
            for (std::size_t it = 0; it < r.trace.size(); ++it)
                t.add_row({as_int(i), std::to_string(seeds[i]), as_int(it), r.trace[it], r.trace[it] / power,
                           std::int64_t{r.converged ? 1 : 0}});
        }
        t.add_metadata("degenerate_trials", std::to_string(degenerate));
        return t;
    }
}
