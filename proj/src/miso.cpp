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

#include <cmath>

namespace fimopt
{
    CVector effective_row_channel(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                                  const FimGeometry &geom, std::size_t m)
    {
        shape.check(geom);
        if (phases.size() != geom.size())
            throw InvalidArgument("effective_row_channel: phase profile length does not match geometry");
        const CMatrix G = bs_fim_channel_matrix(paths, shape, geom, m);
        const CVector h = fim_ue_channel(paths, shape, geom);
        const CVector weighted = phases.shift_diagonal().cwiseProduct(h.conjugate());
        return G.transpose() * weighted;
    }

    Beamformer mrt(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                   const FimGeometry &geom, std::size_t m, double power)
    {
        if (!(power > 0.0) || !std::isfinite(power))
            throw InvalidArgument("mrt: transmit power must be positive");
        const CVector c = effective_row_channel(paths, shape, phases, geom, m);
        const double norm = c.norm();
        if (!(norm > 0.0))
            throw DegenerateScenario("mrt: effective channel h^H S G is zero");
        return Beamformer{std::sqrt(power) * c.conjugate() / norm, power};
    }

    void AlternatingConfig::validate() const
    {
        if (!(threshold > 0.0))
            throw InvalidArgument("AlternatingConfig: stopping threshold must be positive");
        if (max_iterations < 1)
            throw InvalidArgument("AlternatingConfig: at least one iteration is required");
    }

    AlternatingResult alternating_optimize(const PathBundle &paths, const FimGeometry &geom, std::size_t m,
                                           double power, const AlternatingConfig &cfg)
    {
        cfg.validate();
        paths.validate_miso();
        if (m == 0)
            throw InvalidArgument("alternating_optimize: antenna count must be at least 1");

        const std::size_t count = geom.size();
        std::vector<PerElementObjective> objectives;
        objectives.reserve(count);
        for (std::size_t n = 0; n < count; ++n)
            objectives.emplace_back(paths, geom, n);

        SurfaceShape shape = SurfaceShape::zeros(geom);
        PhaseProfile phases = optimal_phases_siso(paths, shape, geom);
        Beamformer bf = mrt(paths, shape, phases, geom, m, power);
        double gain = cascaded_gain_miso(paths, shape, phases, bf.w, geom);

        AlternatingResult result{bf, shape, phases, gain, {}, 0, false};
        result.trace.push_back(gain);

        for (std::size_t i = 0; i < cfg.max_iterations; ++i)
        {
            const double previous = gain;
            if (i > 0)
            {
                bf = mrt(paths, shape, phases, geom, m, power);
                gain = cascaded_gain_miso(paths, shape, phases, bf.w, geom);
            }

            std::vector<MisoElementObjective> miso;
            miso.reserve(count);
            for (const auto &obj : objectives)
                miso.emplace_back(obj, bf.w);
            ElementSolution sol = solve_elements(
                count, geom.d_max(),
                [&](std::size_t n) -> Objective1d {
                    const MisoElementObjective *obj = &miso[n];
                    return [obj](double d) { return obj->evaluate(d); };
                },
                cfg.surface, geom.wavelength());

            SurfaceShape candidate(sol.positions, geom);
            PhaseProfile candidate_phases = optimal_phases_miso(paths, candidate, bf.w, geom);
            const double candidate_gain = cascaded_gain_miso(paths, candidate, candidate_phases, bf.w, geom);
            if (candidate_gain >= gain)
            {
                shape = std::move(candidate);
                phases = std::move(candidate_phases);
                gain = candidate_gain;
            }

            result.trace.push_back(gain);
            result.iterations = i + 1;
            const double increase = gain - previous;
            const bool small = cfg.metric == ConvergenceMetric::kRelative ? increase <= cfg.threshold * previous
                                                                          : increase < cfg.threshold;
            if (small)
            {
                result.converged = true;
                break;
            }
        }

        result.beamformer = std::move(bf);
        result.shape = std::move(shape);
        result.phases = std::move(phases);
        result.gain = gain;
        return result;
    }
}
