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

#ifndef FIMOPT_CHANNEL_HPP
#define FIMOPT_CHANNEL_HPP

#include "fimopt/types.hpp"

namespace fimopt
{
    // ULA steering vector with half-wavelength spacing, element i = exp(j pi i sin(gamma)).
    CVector ula_steering(double gamma, std::size_t m);

    // a_y(theta, phi) (x) a_z(phi) for the unmorphed array.
    CVector upa_steering(const AnglePair &angles, const FimGeometry &geom);

    // exp(j kappa d_n cos(theta) cos(phi)), the extra response due to morphing.
    CVector deformation_response(const AnglePair &angles, const SurfaceShape &shape, const FimGeometry &geom);

    // upa_steering (.) deformation_response
    CVector effective_steering(const AnglePair &angles, const SurfaceShape &shape, const FimGeometry &geom);

    // g(d) = sum_r alpha_r a(theta_r, phi_r, d)
    CVector bs_fim_channel(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom);

    // h(d) = sum_k beta_k a(theta_k, phi_k, -d). The UE side sees the mirrored shape.
    CVector fim_ue_channel(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom);

    // G(d) = sum_r alpha_r a(theta_r, phi_r, d) a_ula(gamma_r)^H, size N x m.
    CMatrix bs_fim_channel_matrix(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom,
                                  std::size_t m);

    // Channel coefficients of a single element as functions of its own deformation.
    // Each path contributes gain * exp(j (base + slope * d)); the base phase holds the
    // UPA term and slope = kappa cos(theta) cos(phi).
    class ElementResponse
    {
    public:
        struct Term
        {
            cdouble gain;
            double base;
            double slope;
        };

        ElementResponse(const PathBundle &paths, const FimGeometry &geom, std::size_t n);

        std::size_t index() const { return n_; }
        const std::vector<Term> &inbound() const { return inbound_; }
        const std::vector<Term> &outbound() const { return outbound_; }

        // g_n(d)
        cdouble bs_side(double d) const;
        // h_n(d), evaluated at -d
        cdouble ue_side(double d) const;
        // v_n(d) = conj(h_n(d)) g_n(d)
        cdouble coefficient(double d) const { return std::conj(ue_side(d)) * bs_side(d); }

        // sum_r weight_r exp(j (base_r + slope_r d)) over inbound paths
        cdouble weighted_bs_side(const CVector &weights, double d) const;

    private:
        std::size_t n_;
        std::vector<Term> inbound_;
        std::vector<Term> outbound_;
    };
}

#endif
