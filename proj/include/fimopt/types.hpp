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

#ifndef FIMOPT_TYPES_HPP
#define FIMOPT_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

namespace fimopt
{
    using cdouble = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;

    inline constexpr double pi = std::numbers::pi;

    // Uniform planar array of n_y x n_z elements with half-wavelength spacing.
    // Flat element index n maps to (n / n_z, n % n_z), matching a_y (x) a_z.
    class FimGeometry
    {
    public:
        FimGeometry(std::size_t n_y, std::size_t n_z, double wavelength, double d_max);

        std::size_t n_y() const { return n_y_; }
        std::size_t n_z() const { return n_z_; }
        std::size_t size() const { return n_y_ * n_z_; }
        double wavelength() const { return wavelength_; }
        double wavenumber() const { return 2.0 * pi / wavelength_; }
        double d_max() const { return d_max_; }

        std::size_t y_index(std::size_t n) const { return n / n_z_; }
        std::size_t z_index(std::size_t n) const { return n % n_z_; }

        // Same array, different morphing bound.
        FimGeometry with_d_max(double d_max) const;

    private:
        std::size_t n_y_;
        std::size_t n_z_;
        double wavelength_;
        double d_max_;
    };

    struct AnglePair
    {
        double theta = 0.0; // azimuth [rad]
        double phi = 0.0;   // elevation [rad]
    };

    // BS -> FIM path. bs_departure is the AoD at the BS array, needed only for MISO.
    struct InboundPath
    {
        cdouble gain{1.0, 0.0};
        AnglePair angles;
        std::optional<double> bs_departure;
    };

    // FIM -> UE path.
    struct OutboundPath
    {
        cdouble gain{1.0, 0.0};
        AnglePair angles;
    };

    struct PathBundle
    {
        std::vector<InboundPath> inbound;
        std::vector<OutboundPath> outbound;

        // Throws InvalidArgument on empty path lists or non-finite parameters.
        void validate() const;
        // Throws InvalidArgument unless every inbound path has a BS departure angle.
        void validate_miso() const;
    };

    // Per-element deformation vector d, |d_n| <= d_max.
    class SurfaceShape
    {
    public:
        SurfaceShape(RVector d, const FimGeometry &geom);

        static SurfaceShape zeros(const FimGeometry &geom);

        const RVector &values() const { return d_; }
        std::size_t size() const { return static_cast<std::size_t>(d_.size()); }
        double operator[](std::size_t n) const { return d_[static_cast<Eigen::Index>(n)]; }

        // The shape seen from the opposite side of the surface.
        SurfaceShape negated() const;

        // Throws InvalidArgument if the shape does not belong to geom.
        void check(const FimGeometry &geom) const;

    private:
        SurfaceShape() = default;
        RVector d_;
    };

    // Unit-modulus vector s used as s^H v. The phase-shift matrix is S = diag(conj(s)),
    // so shift angle n is arg(conj(s_n)) in [0, 2pi).
    class PhaseProfile
    {
    public:
        explicit PhaseProfile(CVector s);

        static PhaseProfile from_shift_angles(const RVector &angles);
        static PhaseProfile identity(std::size_t n);

        const CVector &vector() const { return s_; }
        std::size_t size() const { return static_cast<std::size_t>(s_.size()); }

        // Diagonal of S.
        CVector shift_diagonal() const { return s_.conjugate(); }
        RVector shift_angles() const;

    private:
        CVector s_;
    };
}

#endif
