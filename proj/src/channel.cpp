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

#include "fimopt/channel.hpp"
#include "fimopt/errors.hpp"

#include <cmath>

namespace fimopt
{
    namespace
    {
        CVector linear_phase_ramp(double increment, std::size_t count)
        {
            CVector a(static_cast<Eigen::Index>(count));
            for (std::size_t i = 0; i < count; ++i)
                a[static_cast<Eigen::Index>(i)] = std::polar(1.0, pi * static_cast<double>(i) * increment);
            return a;
        }

        double morph_slope(const AnglePair &angles, const FimGeometry &geom)
        {
            return geom.wavenumber() * std::cos(angles.theta) * std::cos(angles.phi);
        }
    }

    CVector ula_steering(double gamma, std::size_t m)
    {
        if (m == 0)
            throw InvalidArgument("ula_steering: antenna count must be at least 1");
        if (!std::isfinite(gamma))
            throw InvalidArgument("ula_steering: angle must be finite");
        return linear_phase_ramp(std::sin(gamma), m);
    }

    CVector upa_steering(const AnglePair &angles, const FimGeometry &geom)
    {
        const CVector a_y = linear_phase_ramp(std::sin(angles.theta) * std::cos(angles.phi), geom.n_y());
        const CVector a_z = linear_phase_ramp(std::sin(angles.phi), geom.n_z());

        CVector a(static_cast<Eigen::Index>(geom.size()));
        for (std::size_t n = 0; n < geom.size(); ++n)
            a[static_cast<Eigen::Index>(n)] = a_y[static_cast<Eigen::Index>(geom.y_index(n))] *
                                              a_z[static_cast<Eigen::Index>(geom.z_index(n))];
        return a;
    }

    CVector deformation_response(const AnglePair &angles, const SurfaceShape &shape, const FimGeometry &geom)
    {
        if (shape.size() != geom.size())
            throw InvalidArgument("deformation_response: shape length does not match geometry");
        const double slope = morph_slope(angles, geom);
        CVector a(static_cast<Eigen::Index>(geom.size()));
        for (std::size_t n = 0; n < geom.size(); ++n)
            a[static_cast<Eigen::Index>(n)] = std::polar(1.0, slope * shape[n]);
        return a;
    }

    CVector effective_steering(const AnglePair &angles, const SurfaceShape &shape, const FimGeometry &geom)
    {
        return upa_steering(angles, geom).cwiseProduct(deformation_response(angles, shape, geom));
    }

    CVector bs_fim_channel(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom)
    {
        if (paths.inbound.empty())
            throw InvalidArgument("bs_fim_channel: no BS-FIM paths");
        CVector g = CVector::Zero(static_cast<Eigen::Index>(geom.size()));
        for (const auto &p : paths.inbound)
            g += p.gain * effective_steering(p.angles, shape, geom);
        return g;
    }

    CVector fim_ue_channel(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom)
    {
        if (paths.outbound.empty())
            throw InvalidArgument("fim_ue_channel: no FIM-UE paths");
        const SurfaceShape mirrored = shape.negated();
        CVector h = CVector::Zero(static_cast<Eigen::Index>(geom.size()));
        for (const auto &p : paths.outbound)
            h += p.gain * effective_steering(p.angles, mirrored, geom);
        return h;
    }

    CMatrix bs_fim_channel_matrix(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom,
                                  std::size_t m)
    {
        if (m == 0)
            throw InvalidArgument("bs_fim_channel_matrix: antenna count must be at least 1");
        if (paths.inbound.empty())
            throw InvalidArgument("bs_fim_channel_matrix: no BS-FIM paths");
        CMatrix G = CMatrix::Zero(static_cast<Eigen::Index>(geom.size()), static_cast<Eigen::Index>(m));
        for (const auto &p : paths.inbound)
        {
            if (!p.bs_departure)
                throw InvalidArgument("bs_fim_channel_matrix: inbound path without BS departure angle");
            G += p.gain * effective_steering(p.angles, shape, geom) * ula_steering(*p.bs_departure, m).adjoint();
        }
        return G;
    }

    ElementResponse::ElementResponse(const PathBundle &paths, const FimGeometry &geom, std::size_t n) : n_(n)
    {
        if (n >= geom.size())
            throw InvalidArgument("ElementResponse: element index out of range");
        const double iy = static_cast<double>(geom.y_index(n));
        const double iz = static_cast<double>(geom.z_index(n));
        auto term = [&](cdouble gain, const AnglePair &a) {
            const double base = pi * (iy * std::sin(a.theta) * std::cos(a.phi) + iz * std::sin(a.phi));
            return Term{gain, base, morph_slope(a, geom)};
        };
        inbound_.reserve(paths.inbound.size());
        for (const auto &p : paths.inbound)
            inbound_.push_back(term(p.gain, p.angles));
        outbound_.reserve(paths.outbound.size());
        for (const auto &p : paths.outbound)
            outbound_.push_back(term(p.gain, p.angles));
    }

    cdouble ElementResponse::bs_side(double d) const
    {
        cdouble g{0.0, 0.0};
        for (const auto &t : inbound_)
            g += t.gain * std::polar(1.0, t.base + t.slope * d);
        return g;
    }

    cdouble ElementResponse::ue_side(double d) const
    {
        cdouble h{0.0, 0.0};
        for (const auto &t : outbound_)
            h += t.gain * std::polar(1.0, t.base - t.slope * d);
        return h;
    }

    cdouble ElementResponse::weighted_bs_side(const CVector &weights, double d) const
    {
        cdouble g{0.0, 0.0};
        for (std::size_t r = 0; r < inbound_.size(); ++r)
            g += weights[static_cast<Eigen::Index>(r)] * std::polar(1.0, inbound_[r].base + inbound_[r].slope * d);
        return g;
    }
}
