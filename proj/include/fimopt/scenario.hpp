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

#ifndef FIMOPT_SCENARIO_HPP
#define FIMOPT_SCENARIO_HPP

#include "fimopt/types.hpp"

#include <cmath>
#include <cstdint>

namespace fimopt
{
    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
    inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
    inline double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }

    // Large-scale link parameters. Defaults: 50 m / 5 m hops, C0 = -25 dB at 1 m,
    // exponents 3.5 and 2, 1 cm wavelength, P = 15 dBm, morphing range 3 wavelengths.
    struct ScenarioConfig
    {
        double d_bf = 50.0;
        double d_fu = 5.0;
        double c0_db = -25.0;
        double d0 = 1.0;
        double exponent_bf = 3.5;
        double exponent_fu = 2.0;
        double wavelength = 0.01;
        double noise_dbm = -80.0; // recorded, not used by the gain model
        double power_dbm = 15.0;
        std::size_t paths_in = 3;
        std::size_t paths_out = 3;
        std::size_t antennas = 1;
        std::size_t n_y = 2;
        std::size_t n_z = 2;
        double dmax_wavelengths = 3.0;

        void validate() const;
        FimGeometry geometry() const;
        double d_max() const { return dmax_wavelengths * wavelength; }
    };

    // dB quantities of a ScenarioConfig in linear units.
    struct LinkBudget
    {
        double c0 = 0.0;
        double power_w = 0.0;
        double noise_w = 0.0;
        double rho_in_sq = 0.0;  // E|alpha_r|^2
        double rho_out_sq = 0.0; // E|beta_k|^2
    };

    LinkBudget link_budget(const ScenarioConfig &cfg);

    // Draws CSCG path gains with path-loss variances and angles uniform on [-pi/2, pi/2].
    // Path r (or k) is drawn from its own stream derived from (seed, side, index), so the
    // bundle for R paths is a prefix of the bundle for R + 1 paths.
    PathBundle sample_scenario(const ScenarioConfig &cfg, std::uint64_t seed);

    // splitmix64 finalizer
    std::uint64_t mix_seed(std::uint64_t x);
}

#endif
