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

#include "fimopt/types.hpp"
#include "fimopt/errors.hpp"

#include <cmath>
#include <string>

namespace fimopt
{
    namespace
    {
        bool finite(const AnglePair &a) { return std::isfinite(a.theta) && std::isfinite(a.phi); }
        bool finite(const cdouble &c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
    }

    FimGeometry::FimGeometry(std::size_t n_y, std::size_t n_z, double wavelength, double d_max)
        : n_y_(n_y), n_z_(n_z), wavelength_(wavelength), d_max_(d_max)
    {
        if (n_y == 0 || n_z == 0)
            throw InvalidArgument("FimGeometry: element counts must be at least 1");
        if (!(wavelength > 0.0) || !std::isfinite(wavelength))
            throw InvalidArgument("FimGeometry: wavelength must be positive and finite");
        if (!(d_max >= 0.0) || !std::isfinite(d_max))
            throw InvalidArgument("FimGeometry: d_max must be non-negative and finite");
    }

    FimGeometry FimGeometry::with_d_max(double d_max) const
    {
        return FimGeometry(n_y_, n_z_, wavelength_, d_max);
    }

    void PathBundle::validate() const
    {
        if (inbound.empty())
            throw InvalidArgument("PathBundle: at least one BS-FIM path is required");
        if (outbound.empty())
            throw InvalidArgument("PathBundle: at least one FIM-UE path is required");
        for (const auto &p : inbound)
            if (!finite(p.gain) || !finite(p.angles) || (p.bs_departure && !std::isfinite(*p.bs_departure)))
                throw InvalidArgument("PathBundle: non-finite inbound path parameter");
        for (const auto &p : outbound)
            if (!finite(p.gain) || !finite(p.angles))
                throw InvalidArgument("PathBundle: non-finite outbound path parameter");
    }

    void PathBundle::validate_miso() const
    {
        validate();
        for (const auto &p : inbound)
            if (!p.bs_departure)
                throw InvalidArgument("PathBundle: MISO requires a BS departure angle on every inbound path");
    }

    SurfaceShape::SurfaceShape(RVector d, const FimGeometry &geom) : d_(std::move(d))
    {
        check(geom);
    }

    SurfaceShape SurfaceShape::zeros(const FimGeometry &geom)
    {
        SurfaceShape s;
        s.d_ = RVector::Zero(static_cast<Eigen::Index>(geom.size()));
        return s;
    }

    SurfaceShape SurfaceShape::negated() const
    {
        SurfaceShape s;
        s.d_ = -d_;
        return s;
    }

    void SurfaceShape::check(const FimGeometry &geom) const
    {
        if (size() != geom.size())
            throw InvalidArgument("SurfaceShape: length " + std::to_string(size()) + " does not match N = " +
                                  std::to_string(geom.size()));
        for (Eigen::Index n = 0; n < d_.size(); ++n)
            if (!(std::abs(d_[n]) <= geom.d_max()))
                throw InvalidArgument("SurfaceShape: element " + std::to_string(n) + " violates |d_n| <= d_max");
    }

    PhaseProfile::PhaseProfile(CVector s) : s_(std::move(s))
    {
        for (Eigen::Index n = 0; n < s_.size(); ++n)
            if (!(std::abs(std::abs(s_[n]) - 1.0) <= 1e-12))
                throw InvalidArgument("PhaseProfile: entry " + std::to_string(n) + " is not unit modulus");
    }

    PhaseProfile PhaseProfile::from_shift_angles(const RVector &angles)
    {
        CVector s(angles.size());
        for (Eigen::Index n = 0; n < angles.size(); ++n)
            s[n] = std::polar(1.0, -angles[n]);
        return PhaseProfile(std::move(s));
    }

    PhaseProfile PhaseProfile::identity(std::size_t n)
    {
        return PhaseProfile(CVector::Ones(static_cast<Eigen::Index>(n)));
    }

    RVector PhaseProfile::shift_angles() const
    {
        RVector a(s_.size());
        for (Eigen::Index n = 0; n < s_.size(); ++n)
        {
            double phase = std::arg(std::conj(s_[n]));
            if (phase < 0.0)
                phase += 2.0 * pi;
            if (phase >= 2.0 * pi)
                phase = 0.0;
            a[n] = phase;
        }
        return a;
    }
}
