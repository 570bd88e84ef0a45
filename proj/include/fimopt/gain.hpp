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

#ifndef FIMOPT_GAIN_HPP
#define FIMOPT_GAIN_HPP

#include "fimopt/channel.hpp"

namespace fimopt
{
    // v(d) = diag(h(d)^H) g(d)
    CVector coefficient_vector(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom);

    // u(d, w) = diag(h(d)^H) G(d) w
    CVector miso_coefficient_vector(const PathBundle &paths, const SurfaceShape &shape, const CVector &w,
                                    const FimGeometry &geom);

    // v_n = conj(h_n(d_n)) g_n(d_n); depends on the shape only through d_n.
    cdouble per_element_coefficient(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom,
                                    std::size_t n);

    // |h^H S g|^2
    double cascaded_gain_siso(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                              const FimGeometry &geom);

    // |h^H S G w|^2. The power budget is not checked here.
    double cascaded_gain_miso(const PathBundle &paths, const SurfaceShape &shape, const PhaseProfile &phases,
                              const CVector &w, const FimGeometry &geom);

    // s_n = exp(j arg(c_n)) with arg(0) := 0. Aligns every term of s^H c.
    PhaseProfile aligned_phases(const CVector &coefficients);

    // (sum_n |c_n|)^2, the gain reached by aligned_phases(c).
    double aligned_gain(const CVector &coefficients);

    PhaseProfile optimal_phases_siso(const PathBundle &paths, const SurfaceShape &shape, const FimGeometry &geom);

    PhaseProfile optimal_phases_miso(const PathBundle &paths, const SurfaceShape &shape, const CVector &w,
                                     const FimGeometry &geom);

    // How the (n_y, n_z) element indices enter the closed-form phase differences.
    // kSteering pairs n_y with sin(theta)cos(phi) and n_z with sin(phi), as the steering
    // vectors do. kAsPrinted swaps them.
    enum class IndexConvention
    {
        kSteering,
        kAsPrinted
    };

    // z_n(d_n) = |v_n(d_n)|^2 for one element, with the morphing bound attached.
    class PerElementObjective
    {
    public:
        PerElementObjective(const PathBundle &paths, const FimGeometry &geom, std::size_t n);

        std::size_t index() const { return response_.index(); }
        double d_max() const { return d_max_; }
        const ElementResponse &response() const { return response_; }

        // No bound check; the optimizers only call this with feasible points.
        double evaluate(double d) const { return std::norm(response_.coefficient(d)); }

        // Throws InvalidArgument when |d| > d_max.
        void check_bound(double d) const;

        // Inputs needed by the closed form and the MISO variant.
        const std::vector<AnglePair> &inbound_angles() const { return inbound_angles_; }
        const std::vector<AnglePair> &outbound_angles() const { return outbound_angles_; }
        const std::vector<std::optional<double>> &bs_departures() const { return bs_departures_; }
        std::size_t y_index() const { return y_index_; }
        std::size_t z_index() const { return z_index_; }
        double wavenumber() const { return wavenumber_; }

    private:
        ElementResponse response_;
        double d_max_;
        std::vector<AnglePair> inbound_angles_;
        std::vector<AnglePair> outbound_angles_;
        std::vector<std::optional<double>> bs_departures_;
        std::size_t y_index_;
        std::size_t z_index_;
        double wavenumber_;
    };

    double per_element_gain(const PerElementObjective &obj, double d);

    // Sum of 2 K^2 R^2 cosines. Only defined for real non-negative path gains;
    // throws UnsupportedInput otherwise.
    double per_element_gain_closed_form(const PerElementObjective &obj, double d,
                                        IndexConvention convention = IndexConvention::kSteering);

    // o_n(d_n, w) = |sum_m w_m conj(h_n(d_n)) G_nm(d_n)|^2, evaluated from the G row directly.
    double per_element_gain_miso(const PerElementObjective &obj, double d, const CVector &w);

    // o_n(., w) for a fixed beamformer. Folds a_ula(gamma_r)^H w into the path weights
    // so that each evaluation costs O(R + K).
    class MisoElementObjective
    {
    public:
        MisoElementObjective(const PerElementObjective &obj, const CVector &w);

        double d_max() const { return d_max_; }
        double evaluate(double d) const;

    private:
        const ElementResponse *response_;
        CVector weights_;
        double d_max_;
    };
}

#endif
