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

#include "fimopt/miso.hpp"
#include "fimopt/errors.hpp"
#include "fimopt/scenario.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fimopt;

namespace
{
    const double lambda = 0.01;

    PathBundle miso_channel(std::uint64_t seed, std::size_t m)
    {
        ScenarioConfig cfg;
        cfg.antennas = m;
        return sample_scenario(cfg, seed);
    }

    CVector random_beam(std::mt19937_64 &rng, std::size_t m, double power)
    {
        std::normal_distribution<double> nrm;
        CVector w(static_cast<Eigen::Index>(m));
        for (auto &x : w)
            x = cdouble(nrm(rng), nrm(rng));
        return w * (std::sqrt(power) / w.norm());
    }
}

TEST_CASE("mrt")
{
    const FimGeometry g(2, 2, lambda, 3 * lambda);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial)
    {
        const std::size_t m = trial % 2 == 0 ? 4 : 1;
        const auto s = oracle::random_scenario(rng, 2, 2, 3, 3, m);
        const PathBundle b = oracle::to_bundle(s);
        const SurfaceShape shape(Eigen::Map<const RVector>(oracle::random_shape(rng, 4, g.d_max()).data(), 4), g);
        const PhaseProfile phases(Eigen::Map<const CVector>(oracle::random_unit(rng, 4).data(), 4));
        const double power = 0.5 + trial;

        const Beamformer bf = mrt(b, shape, phases, g, m, power);
        CHECK(bf.power == power);
        CHECK(bf.w.squaredNorm() == doctest::Approx(power).epsilon(1e-12));

        const CVector c = effective_row_channel(b, shape, phases, g, m);
        const double best = cascaded_gain_miso(b, shape, phases, bf.w, g);
        CHECK(oracle::rel_err(best, power * c.squaredNorm()) <= 1e-10);
        if (m == 1)
            CHECK(std::abs(std::abs(bf.w[0]) - std::sqrt(power)) <= 1e-12);
        for (int k = 0; k < 100; ++k)
            CHECK(cascaded_gain_miso(b, shape, phases, random_beam(rng, m, power), g) <= best * (1.0 + 1e-12));
    }

    PathBundle dead = miso_channel(3, 4);
    for (auto &p : dead.outbound)
        p.gain = 0.0;
    CHECK_THROWS_AS(mrt(dead, SurfaceShape::zeros(g), PhaseProfile::identity(4), g, 4, 1.0), DegenerateScenario);
}

TEST_CASE("alternating_optimize")
{
    const double power = dbm_to_watts(15.0);

    SUBCASE("one antenna reproduces the SISO optimum")
    {
        const FimGeometry g(3, 2, lambda, 3 * lambda);
        for (std::uint64_t seed = 0; seed < 5; ++seed)
        {
            const PathBundle b = miso_channel(seed, 1);
            AlternatingConfig cfg;
            cfg.surface.pso.seed = seed;
            const AlternatingResult r = alternating_optimize(b, g, 1, power, cfg);
            const OptimizationResult siso = optimize_surface_siso(b, g, cfg.surface);
            CHECK(oracle::rel_err(r.effective_gain(), siso.gain) <= 1e-9);
            CHECK(r.converged);
        }
    }

    SUBCASE("rigid surface")
    {
        const FimGeometry g(2, 2, lambda, 0.0);
        const PathBundle b = miso_channel(4, 4);
        const AlternatingResult r = alternating_optimize(b, g, 4, power, AlternatingConfig{});
        CHECK(r.shape.values().norm() == 0.0);
        CHECK(r.converged);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            CHECK(r.trace[i] >= r.trace[i - 1]);
    }

    SUBCASE("four antennas")
    {
        const FimGeometry g(6, 2, lambda, 3 * lambda);
        for (std::uint64_t seed = 0; seed < 4; ++seed)
        {
            const PathBundle b = miso_channel(100 + seed, 4);
            AlternatingConfig cfg;
            cfg.surface.pso.iterations = 60;
            const AlternatingResult r = alternating_optimize(b, g, 4, power, cfg);
            REQUIRE(r.trace.size() == r.iterations + 1);
            for (std::size_t i = 1; i < r.trace.size(); ++i)
                CHECK(r.trace[i] >= r.trace[i - 1]);
            CHECK(r.converged);
            CHECK(r.gain == r.trace.back());
            CHECK(oracle::rel_err(r.gain, cascaded_gain_miso(b, r.shape, r.phases, r.beamformer.w, g)) <= 1e-12);
            CHECK(r.shape.values().cwiseAbs().maxCoeff() <= g.d_max());
            CHECK(r.beamformer.w.squaredNorm() == doctest::Approx(power).epsilon(1e-12));

            // The loop ends on a phase update, so a fresh MRT step gains at most about one threshold.
            const Beamformer again = mrt(b, r.shape, r.phases, g, 4, power);
            CHECK(cascaded_gain_miso(b, r.shape, r.phases, again.w, g) <= r.gain * (1.0 + 2.0 * cfg.threshold));
            const PhaseProfile aligned = optimal_phases_miso(b, r.shape, r.beamformer.w, g);
            CHECK(cascaded_gain_miso(b, r.shape, aligned, r.beamformer.w, g) <= r.gain * (1.0 + 1e-9));

            // Same config, threads = 2: same bits.
            cfg.surface.threads = 2;
            const AlternatingResult p = alternating_optimize(b, g, 4, power, cfg);
            CHECK(p.gain == r.gain);
            CHECK(p.trace == r.trace);
        }
    }

    SUBCASE("absolute metric and bad configs")
    {
        const FimGeometry g(2, 2, lambda, lambda);
        const PathBundle b = miso_channel(9, 2);
        AlternatingConfig cfg;
        cfg.metric = ConvergenceMetric::kAbsolute;
        cfg.threshold = 1e-30;
        cfg.max_iterations = 3;
        const AlternatingResult r = alternating_optimize(b, g, 2, power, cfg);
        CHECK(r.iterations <= 3);

        AlternatingConfig bad;
        bad.threshold = -1.0;
        CHECK_THROWS_AS(alternating_optimize(b, g, 2, power, bad), InvalidArgument);
        CHECK_THROWS_AS(alternating_optimize(b, g, 2, -1.0, AlternatingConfig{}), InvalidArgument);
    }
}
