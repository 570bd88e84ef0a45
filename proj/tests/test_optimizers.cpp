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
#include "fimopt/scenario.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fimopt;

namespace
{
    const double lambda = 0.01;

    Objective1d cosine() { return [](double d) { return std::cos(2.0 * pi * d / lambda); }; }

    // Default 2 x 2 surface with three paths per hop.
    PathBundle default_channel(std::uint64_t seed)
    {
        ScenarioConfig cfg;
        return sample_scenario(cfg, seed);
    }
}

TEST_CASE("pso_1d")
{
    PsoConfig cfg;
    cfg.seed = 42;

    const Optimum1d flat = pso_1d([](double) { return 2.5; }, 3 * lambda, cfg);
    CHECK(flat.value == 2.5);
    CHECK(std::abs(flat.position) <= 3 * lambda);

    const Optimum1d c = pso_1d(cosine(), 3 * lambda, cfg);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(c.position) <= 3 * lambda);

    const Optimum1d rigid = pso_1d(cosine(), 0.0, cfg);
    CHECK(rigid.position == 0.0);
    CHECK(rigid.value == 1.0);

    // Same seed, same bits.
    const Optimum1d again = pso_1d(cosine(), 3 * lambda, cfg);
    CHECK(again.position == c.position);
    CHECK(again.value == c.value);
    CHECK(again.trace == c.trace);

    REQUIRE(c.trace.size() == cfg.iterations);
    for (std::size_t t = 1; t < c.trace.size(); ++t)
        CHECK(c.trace[t] >= c.trace[t - 1]);

    // Every evaluated point is feasible.
    double worst = 0.0;
    pso_1d([&](double d) { worst = std::max(worst, std::abs(d)); return -d * d; }, 0.02, cfg);
    CHECK(worst <= 0.02);

    PsoConfig bad = cfg;
    bad.particles = 1;
    CHECK_THROWS_AS(pso_1d(cosine(), lambda, bad), InvalidArgument);
    bad = cfg;
    bad.iterations = 0;
    CHECK_THROWS_AS(pso_1d(cosine(), lambda, bad), InvalidArgument);
}

TEST_CASE("migd_1d")
{
    MigdConfig cfg;
    CHECK(migd_1d([](double) { return -1.0; }, cfg, 3 * lambda).value == -1.0);

    const Optimum1d c = migd_1d(cosine(), cfg, 3 * lambda);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(c.trace.size() == cfg.intervals);

    const Optimum1d rigid = migd_1d(cosine(), cfg, 0.0);
    CHECK(rigid.position == 0.0);

    // Maximum on the upper bound is reached through the backward difference.
    const Optimum1d edge = migd_1d([](double d) { return d; }, cfg, 0.01);
    CHECK(edge.position == 0.01);

    double worst = 0.0;
    migd_1d([&](double d) { worst = std::max(worst, std::abs(d)); return std::sin(900.0 * d); }, cfg, 0.02);
    CHECK(worst <= 0.02);

    MigdConfig bad;
    bad.intervals = 0;
    CHECK_THROWS_AS(migd_1d(cosine(), bad, lambda), InvalidArgument);
    bad = MigdConfig{};
    bad.step = -1.0;
    CHECK_THROWS_AS(migd_1d(cosine(), bad, lambda), InvalidArgument);
}

TEST_CASE("grid_oracle")
{
    CHECK_THROWS_AS(grid_oracle(cosine(), lambda, 1), InvalidArgument);

    const Optimum1d up = grid_oracle([](double d) { return 3.0 * d + 1.0; }, 0.02, 7);
    CHECK(up.position == 0.02);
    const Optimum1d down = grid_oracle([](double d) { return -d; }, 0.02, 7);
    CHECK(down.position == -0.02);
    const Optimum1d flat = grid_oracle([](double) { return 0.0; }, 0.02, 9);
    CHECK(flat.position == -0.02);

    // Refining p -> 2p - 1 points keeps every old grid point, so the value cannot drop.
    const PathBundle b = default_channel(5);
    const FimGeometry g(2, 2, lambda, 3 * lambda);
    const PerElementObjective obj(b, g, 1);
    const Objective1d f = [&](double d) { return obj.evaluate(d); };
    std::size_t points = 3;
    double previous = grid_oracle(f, g.d_max(), points).value;
    for (int i = 0; i < 10; ++i)
    {
        points = 2 * points - 1;
        const double v = grid_oracle(f, g.d_max(), points).value;
        CHECK(v >= previous);
        previous = v;
    }
}

TEST_CASE("per-element landscape against a dense grid")
{
    const FimGeometry g(2, 2, lambda, 3 * lambda);
    const PathBundle b = default_channel(31);
    for (std::size_t n = 0; n < 4; ++n)
    {
        const PerElementObjective obj(b, g, n);
        std::vector<double> z(10001);
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] = per_element_gain(obj, i + 1 == z.size() ? g.d_max() : -g.d_max() + i * 6 * lambda / 10000.0);
        int maxima = 0;
        for (std::size_t i = 1; i + 1 < z.size(); ++i)
            if (z[i] > z[i - 1] && z[i] >= z[i + 1])
                ++maxima;
        CHECK(maxima > 1);
        const double best = *std::max_element(z.begin(), z.end());
        const Optimum1d grid = grid_oracle([&](double d) { return obj.evaluate(d); }, g.d_max(), 10001);
        CHECK(grid.value == best);
    }
}

TEST_CASE("optimize_surface_siso")
{
    SUBCASE("rigid surface reduces to phase alignment")
    {
        const FimGeometry g(2, 3, lambda, 0.0);
        const PathBundle b = default_channel(8);
        const OptimizationResult r = optimize_surface_siso(b, g, SurfaceOptimizerConfig{});
        CHECK(r.shape.values().norm() == 0.0);
        CHECK(oracle::rel_err(r.gain, aligned_gain(coefficient_vector(b, SurfaceShape::zeros(g), g))) <= 1e-12);
    }

    SUBCASE("single path each side gives N^2 |alpha|^2 |beta|^2")
    {
        const FimGeometry g(3, 2, lambda, 3 * lambda);
        PathBundle b;
        b.inbound.push_back({cdouble(0.3, -0.4), {0.5, -0.2}, 0.0});
        b.outbound.push_back({cdouble(-1.5, 2.0), {1.0, 0.4}});
        for (Method m : {Method::kPso, Method::kMigd, Method::kGrid})
        {
            SurfaceOptimizerConfig cfg;
            cfg.method = m;
            const OptimizationResult r = optimize_surface_siso(b, g, cfg);
            CHECK(r.gain == doctest::Approx(36.0 * 0.25 * 6.25).epsilon(1e-10));
        }
    }

    SUBCASE("per-element optima agree with the grid oracle")
    {
        const FimGeometry g(2, 2, lambda, 3 * lambda);
        const PathBundle b = default_channel(2026);
        SurfaceOptimizerConfig cfg;
        cfg.pso.seed = 2026;
        const OptimizationResult r = optimize_surface_siso(b, g, cfg);
        for (std::size_t n = 0; n < 4; ++n)
        {
            const PerElementObjective obj(b, g, n);
            const double oracle_value = grid_oracle([&](double d) { return obj.evaluate(d); }, g.d_max(), 10001).value;
            CHECK(r.element_gains[static_cast<Eigen::Index>(n)] >= (1.0 - 1e-3) * oracle_value);
            CHECK(std::abs(r.shape[n]) <= g.d_max());
        }
        double root_sum = 0.0;
        for (Eigen::Index n = 0; n < 4; ++n)
            root_sum += std::sqrt(r.element_gains[n]);
        CHECK(oracle::rel_err(r.gain, root_sum * root_sum) <= 1e-9);
        for (std::size_t t = 1; t < r.trace.size(); ++t)
            CHECK(r.trace[t] >= r.trace[t - 1]);
    }

    SUBCASE("FIM never loses to the rigid surface, and threads do not change the result")
    {
        for (std::uint64_t seed = 0; seed < 30; ++seed)
        {
            const FimGeometry g(2, 2, lambda, (0.05 + 0.1 * static_cast<double>(seed % 5)) * lambda);
            const PathBundle b = default_channel(seed);
            const double rigid = aligned_gain(coefficient_vector(b, SurfaceShape::zeros(g), g));
            for (Method m : {Method::kPso, Method::kMigd, Method::kGrid})
            {
                SurfaceOptimizerConfig cfg;
                cfg.method = m;
                cfg.pso.iterations = 20;
                cfg.migd.intervals = 3;
                cfg.grid_points = 11;
                const OptimizationResult serial = optimize_surface_siso(b, g, cfg);
                CHECK(serial.gain >= rigid * (1.0 - 1e-12));
                cfg.threads = 3;
                const OptimizationResult parallel = optimize_surface_siso(b, g, cfg);
                CHECK(parallel.gain == serial.gain);
                CHECK((parallel.shape.values() - serial.shape.values()).norm() == 0.0);
            }
        }
    }

    SUBCASE("method names")
    {
        CHECK(parse_method("migd") == Method::kMigd);
        CHECK(to_string(Method::kGrid) == "grid");
        CHECK_THROWS_AS(parse_method("anneal"), InvalidArgument);
    }
}
