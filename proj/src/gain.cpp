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

#include "fimopt/gain.hpp"
#include "fimopt/errors.hpp"

#include <cmath>
#include <string>

namespace fimopt
{
    namespace
    {
        void check_phases(const PhaseProfile &phases, const FimGeometry &geom)
        {
            if (phases.size() != geom.size())
                throw InvalidArgument("phase profile length does not match geometry");
        }
    }

    CVector coefficient_vector(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom)
    {
        shape.check(geom);
        return fim_ue_channel(paths, shape, geom).conjugate().cwiseProduct(bs_fim_channel(paths, shape, geom));
    }

    CVector miso_coefficient_vector(const PathBundle &paths, const SurfaceShape &shape, const CVector &w,
                                    const FimGeometry &geom)
    {
        shape.check(geom);
        const CMatrix G = bs_fim_channel_matrix(paths, shape, geom, static_cast<std::size_t>(w.size()));
        return fim_ue_channel(paths, shape, geom).conjugate().cwiseProduct(G * w);
    }

    cdouble per_element_coefficient(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom,
                                    std::size_t n)
    {
        if (n >= geom.size())
            throw InvalidArgument("per_element_coefficient: index " + std::to_string(n) + " out of range");
        shape.check(geom);
        return ElementResponse(paths, geom, n).coefficient(shape[n]);
    }

    double cascaded_gain_siso(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                              const FimGeometry &geom)
    {
        shape.check(geom);
        check_phases(phases, geom);
        const CVector g = bs_fim_channel(paths, shape, geom);
        const CVector h = fim_ue_channel(paths, shape, geom);
        return std::norm(h.dot(phases.shift_diagonal().cwiseProduct(g)));
    }

    double cascaded_gain_miso(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                              const CVector &w, const FimGeometry &geom)
    {
        shape.check(geom);
        check_phases(phases, geom);
        if (w.size() == 0)
            throw InvalidArgument("cascaded_gain_miso: empty beamformer");
        const CMatrix G = bs_fim_channel_matrix(paths, shape, geom, static_cast<std::size_t>(w.size()));
        const CVector h = fim_ue_channel(paths, shape, geom);
        return std::norm(h.dot(phases.shift_diagonal().cwiseProduct(G * w)));
    }

    PhaseProfile aligned_phases(const CVector &coefficients)
    {
        CVector s(coefficients.size());
        for (Eigen::Index n = 0; n < coefficients.size(); ++n)
        {
            const double mag = std::abs(coefficients[n]);
            s[n] = mag > 0.0 ? std::polar(1.0, std::arg(coefficients[n])) : cdouble{1.0, 0.0};
        }
        return PhaseProfile(std::move(s));
    }

    double aligned_gain(const CVector &coefficients)
    {
        double sum = 0.0;
        for (Eigen::Index n = 0; n < coefficients.size(); ++n)
            sum += std::abs(coefficients[n]);
        return sum * sum;
    }

    PhaseProfile optimal_phases_siso(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom)
    {
        return aligned_phases(coefficient_vector(paths, shape, geom));
    }

    PhaseProfile optimal_phases_miso(const PathBundle &paths, const SurfaceShape &shape, const CVector &w,
                                     const FimGeometry &geom)
    {
        return aligned_phases(miso_coefficient_vector(paths, shape, w, geom));
    }

    PerElementObjective::PerElementObjective(const PathBundle &paths, const FimGeometry &geom, std::size_t n)
        : response_(paths, geom, n), d_max_(geom.d_max()), y_index_(geom.y_index(n)), z_index_(geom.z_index(n)),
          wavenumber_(geom.wavenumber())
    {
        paths.validate();
        for (const auto &p : paths.inbound)
        {
            inbound_angles_.push_back(p.angles);
            bs_departures_.push_back(p.bs_departure);
        }
        for (const auto &p : paths.outbound)
            outbound_angles_.push_back(p.angles);
    }

    void PerElementObjective::check_bound(double d) const
    {
        if (!(std::abs(d) <= d_max_))
            throw InvalidArgument("per-element objective: |d_n| exceeds d_max");
    }

    double per_element_gain(const PerElementObjective &obj, double d)
    {
        obj.check_bound(d);
        return obj.evaluate(d);
    }

    double per_element_gain_closed_form(const PerElementObjective &obj, double d, IndexConvention convention)
    {
        obj.check_bound(d);
        const auto &in = obj.response().inbound();
        const auto &out = obj.response().outbound();
        for (const auto &t : in)
            if (t.gain.imag() != 0.0 || t.gain.real() < 0.0)
                throw UnsupportedInput("closed form requires real non-negative BS-FIM gains");
        for (const auto &t : out)
            if (t.gain.imag() != 0.0 || t.gain.real() < 0.0)
                throw UnsupportedInput("closed form requires real non-negative FIM-UE gains");

        const double iy = static_cast<double>(obj.y_index());
        const double iz = static_cast<double>(obj.z_index());
        const double kappa = obj.wavenumber();

        // Phase of one path at this element, up to the sign of the morphing term.
        auto phase = [&](const AnglePair &a, double morph_sign) {
            const double y_term = std::sin(a.theta) * std::cos(a.phi);
            const double z_term = std::sin(a.phi);
            const double upa = convention == IndexConvention::kSteering ? pi * (iy * y_term + iz * z_term)
                                                                        : pi * (iy * z_term + iz * y_term);
            return morph_sign * kappa * d * std::cos(a.phi) * std::cos(a.theta) + upa;
        };

        const auto &ain = obj.inbound_angles();
        const auto &aout = obj.outbound_angles();
        std::vector<double> p(ain.size()), q(aout.size());
        for (std::size_t r = 0; r < ain.size(); ++r)
            p[r] = phase(ain[r], 1.0);
        for (std::size_t k = 0; k < aout.size(); ++k)
            q[k] = phase(aout[k], -1.0);

        double sum = 0.0;
        for (std::size_t r = 0; r < in.size(); ++r)
            for (std::size_t r2 = 0; r2 < in.size(); ++r2)
            {
                const double f = p[r] - p[r2];
                const double a = in[r].gain.real() * in[r2].gain.real();
                for (std::size_t k = 0; k < out.size(); ++k)
                    for (std::size_t k2 = 0; k2 < out.size(); ++k2)
                    {
                        const double t = q[k] - q[k2];
                        const double b = out[k].gain.real() * out[k2].gain.real();
                        sum += a * b * (std::cos(f + t) + std::cos(f - t));
                    }
            }
        return 0.5 * sum;
    }

    double per_element_gain_miso(const PerElementObjective &obj, double d, const CVector &w)
    {
        obj.check_bound(d);
        const auto m = static_cast<std::size_t>(w.size());
        if (m == 0)
            throw InvalidArgument("per_element_gain_miso: empty beamformer");
        const auto &in = obj.response().inbound();
        const auto &gammas = obj.bs_departures();

        // Row n of G(d).
        CVector row = CVector::Zero(static_cast<Eigen::Index>(m));
        for (std::size_t r = 0; r < in.size(); ++r)
        {
            if (!gammas[r])
                throw InvalidArgument("per_element_gain_miso: inbound path without BS departure angle");
            const cdouble a = in[r].gain * std::polar(1.0, in[r].base + in[r].slope * d);
            row += a * ula_steering(*gammas[r], m).conjugate();
        }
        cdouble acc{0.0, 0.0};
        const cdouble h_conj = std::conj(obj.response().ue_side(d));
        for (std::size_t i = 0; i < m; ++i)
            acc += w[static_cast<Eigen::Index>(i)] * h_conj * row[static_cast<Eigen::Index>(i)];
        return std::norm(acc);
    }

    MisoElementObjective::MisoElementObjective(const PerElementObjective &obj, const CVector &w)
        : response_(&obj.response()), d_max_(obj.d_max())
    {
        const auto m = static_cast<std::size_t>(w.size());
        if (m == 0)
            throw InvalidArgument("MisoElementObjective: empty beamformer");
        const auto &in = obj.response().inbound();
        const auto &gammas = obj.bs_departures();
        weights_.resize(static_cast<Eigen::Index>(in.size()));
        for (std::size_t r = 0; r < in.size(); ++r)
        {
            if (!gammas[r])
                throw InvalidArgument("MisoElementObjective: inbound path without BS departure angle");
            weights_[static_cast<Eigen::Index>(r)] = in[r].gain * ula_steering(*gammas[r], m).dot(w);
        }
    }

    double MisoElementObjective::evaluate(double d) const
    {
        return std::norm(std::conj(response_->ue_side(d)) * response_->weighted_bs_side(weights_, d));
    }
}
