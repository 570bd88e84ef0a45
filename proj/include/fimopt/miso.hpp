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

#ifndef FIMOPT_MISO_HPP
#define FIMOPT_MISO_HPP

#include "fimopt/optimizers.hpp"

namespace fimopt
{
    struct Beamformer
    {
        CVector w;
        double power = 0.0; // budget P [W]
    };

    // Entries of the row vector h^H S G, length m.
    CVector effective_row_channel(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                                  const FimGeometry &geom, std::size_t m);

    // w = sqrt(P) c^H / ||c|| with c = h^H S G. Throws DegenerateScenario when c = 0.
    Beamformer mrt(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                   const FimGeometry &geom, std::size_t m, double power);

    enum class ConvergenceMetric
    {
        kRelative, // (gain_i - gain_{i-1}) <= eps * gain_{i-1}
        kAbsolute  // (gain_i - gain_{i-1}) < eps
    };

    struct AlternatingConfig
    {
        std::size_t max_iterations = 1000;
        double threshold = 1e-4;
        ConvergenceMetric metric = ConvergenceMetric::kRelative;
        // Inner per-element solver. The same seeds are reused in every outer iteration.
        SurfaceOptimizerConfig surface;

        void validate() const;
    };

    struct AlternatingResult
    {
        Beamformer beamformer;
        SurfaceShape shape;
        PhaseProfile phases;
        double gain = 0.0;
        // trace[0] is the gain of MRT at the unmorphed start; trace[i] the gain after outer iteration i.
        std::vector<double> trace;
        std::size_t iterations = 0;
        bool converged = false;

        double effective_gain() const { return gain / beamformer.power; }
    };

    // Alternates MRT beamforming with per-element shape optimization and phase alignment,
    // starting from d = 0 and the SISO-optimal phases there. A shape step that would lower
    // the gain is rejected, so the trace never decreases.
    AlternatingResult alternating_optimize(const PathBundle &paths, const FimGeometry &geom, std::size_t m,
                                           double power, const AlternatingConfig &cfg);
}

#endif
