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

#include "fimopt/scenario.hpp"
#include "fimopt/errors.hpp"

#include <cmath>
#include <random>

namespace fimopt
{
    void ScenarioConfig::validate() const
    {
        auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
        if (!positive(d_bf) || !positive(d_fu) || !positive(d0))
            throw InvalidArgument("ScenarioConfig: distances must be positive");
        if (!positive(wavelength))
            throw InvalidArgument("ScenarioConfig: wavelength must be positive");
        if (!std::isfinite(c0_db) || !std::isfinite(power_dbm) || !std::isfinite(noise_dbm))
            throw InvalidArgument("ScenarioConfig: power levels must be finite");
        if (!std::isfinite(exponent_bf) || !std::isfinite(exponent_fu))
            throw InvalidArgument("ScenarioConfig: path-loss exponents must be finite");
        if (paths_in < 1 || paths_out < 1)
            throw InvalidArgument("ScenarioConfig: at least one path per hop is required");
        if (antennas < 1 || n_y < 1 || n_z < 1)
            throw InvalidArgument("ScenarioConfig: antenna and element counts must be at least 1");
        if (!(dmax_wavelengths >= 0.0) || !std::isfinite(dmax_wavelengths))
            throw InvalidArgument("ScenarioConfig: morphing range must be non-negative");
    }

    FimGeometry ScenarioConfig::geometry() const
    {
        return FimGeometry(n_y, n_z, wavelength, d_max());
    }

    LinkBudget link_budget(const ScenarioConfig &cfg)
    {
        cfg.validate();
        LinkBudget b;
        b.c0 = db_to_linear(cfg.c0_db);
        b.power_w = dbm_to_watts(cfg.power_dbm);
        b.noise_w = dbm_to_watts(cfg.noise_dbm);
        b.rho_in_sq = b.c0 * std::pow(cfg.d_bf / cfg.d0, -cfg.exponent_bf);
        b.rho_out_sq = b.c0 * std::pow(cfg.d_fu / cfg.d0, -cfg.exponent_fu);
        return b;
    }

    std::uint64_t mix_seed(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    namespace
    {
        std::mt19937_64 path_stream(std::uint64_t seed, std::uint64_t side, std::uint64_t index)
        {
            return std::mt19937_64(mix_seed(seed ^ mix_seed((side << 32) | index)));
        }

        cdouble cscg(std::mt19937_64 &rng, double variance)
        {
            std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
            const double re = normal(rng);
            const double im = normal(rng);
            return {re, im};
        }
    }

    PathBundle sample_scenario(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        const LinkBudget budget = link_budget(cfg);
        std::uniform_real_distribution<double> angle(-pi / 2.0, pi / 2.0);

        PathBundle paths;
        paths.inbound.reserve(cfg.paths_in);
        for (std::size_t r = 0; r < cfg.paths_in; ++r)
        {
            auto rng = path_stream(seed, 0, r);
            InboundPath p;
            p.gain = cscg(rng, budget.rho_in_sq);
            p.angles.theta = angle(rng);
            p.angles.phi = angle(rng);
            p.bs_departure = angle(rng);
            paths.inbound.push_back(p);
        }
        paths.outbound.reserve(cfg.paths_out);
        for (std::size_t k = 0; k < cfg.paths_out; ++k)
        {
            auto rng = path_stream(seed, 1, k);
            OutboundPath p;
            p.gain = cscg(rng, budget.rho_out_sq);
            p.angles.theta = angle(rng);
            p.angles.phi = angle(rng);
            paths.outbound.push_back(p);
        }
        return paths;
    }
}
