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

// Python bindings for the core library.

#include "fimopt/config.hpp"
#include "fimopt/errors.hpp"
#include "fimopt/experiments.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace fimopt;

namespace
{
    // Settings arrive as a dict of config keys; values are converted through their text form
    // so the library parser does the validation.
    ExperimentConfig make_config(const py::dict &settings)
    {
        ExperimentConfig cfg;
        for (const auto &[key, value] : settings)
        {
            std::string text;
            if (py::isinstance<py::bool_>(value))
                text = value.cast<bool>() ? "true" : "false";
            else if (py::isinstance<py::float_>(value))
                text = format_number(value.cast<double>());
            else
                text = py::str(value).cast<std::string>();
            set_config_value(cfg, key.cast<std::string>(), text);
        }
        cfg.validate();
        return cfg;
    }

    py::list table_rows(const Table &t)
    {
        py::list rows;
        for (const auto &row : t.rows)
        {
            py::list r;
            for (const auto &cell : row)
                std::visit([&](const auto &v) { r.append(v); }, cell);
            rows.append(r);
        }
        return rows;
    }

    std::vector<Method> parse_methods(const std::vector<std::string> &names)
    {
        std::vector<Method> out;
        for (const auto &n : names)
            out.push_back(parse_method(n));
        return out;
    }
}

PYBIND11_MODULE(_fimopt, m)
{
    m.doc() = "Shape and phase optimization for flexible intelligent metasurfaces";
    m.attr("__version__") = tool_version;

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<DegenerateScenario>(m, "DegenerateScenario", PyExc_RuntimeError);
    py::register_exception<UnsupportedInput>(m, "UnsupportedInput", PyExc_ValueError);

    py::class_<FimGeometry>(m, "Geometry")
        .def(py::init<std::size_t, std::size_t, double, double>(), "n_y"_a, "n_z"_a, "wavelength"_a, "d_max"_a)
        .def_property_readonly("n_y", &FimGeometry::n_y)
        .def_property_readonly("n_z", &FimGeometry::n_z)
        .def_property_readonly("size", &FimGeometry::size)
        .def_property_readonly("wavelength", &FimGeometry::wavelength)
        .def_property_readonly("d_max", &FimGeometry::d_max)
        .def("with_d_max", &FimGeometry::with_d_max, "d_max"_a);

    py::class_<PathBundle>(m, "PathBundle")
        .def_property_readonly("inbound",
                               [](const PathBundle &b) {
                                   py::list out;
                                   for (const auto &p : b.inbound)
                                       out.append(py::dict("gain"_a = p.gain, "theta"_a = p.angles.theta,
                                                           "phi"_a = p.angles.phi, "bs_departure"_a = p.bs_departure));
                                   return out;
                               })
        .def_property_readonly("outbound", [](const PathBundle &b) {
            py::list out;
            for (const auto &p : b.outbound)
                out.append(py::dict("gain"_a = p.gain, "theta"_a = p.angles.theta, "phi"_a = p.angles.phi));
            return out;
        });

    m.def(
        "sample_scenario",
        [](const py::dict &settings, std::uint64_t seed) {
            const ExperimentConfig cfg = make_config(settings);
            return py::make_tuple(sample_scenario(cfg.scenario, seed), cfg.scenario.geometry());
        },
        "settings"_a = py::dict(), "seed"_a = 0,
        "Draw one channel; returns (paths, geometry) for the given config keys.");

    m.def(
        "element_gain",
        [](const PathBundle &paths, const FimGeometry &geom, std::size_t n, double d) {
            return per_element_gain(PerElementObjective(paths, geom, n), d);
        },
        "paths"_a, "geometry"_a, "element"_a, "d"_a, "z_n at deformation d [m].");

    m.def(
        "siso_gain",
        [](const PathBundle &paths, const FimGeometry &geom, const RVector &shape) {
            const SurfaceShape s(shape, geom);
            return aligned_gain(coefficient_vector(paths, s, geom));
        },
        "paths"_a, "geometry"_a, "shape"_a, "SISO gain of a surface shape with aligned phases.");

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_property_readonly("shape", [](const OptimizationResult &r) { return RVector(r.shape.values()); })
        .def_property_readonly("phases", [](const OptimizationResult &r) { return CVector(r.phases.vector()); })
        .def_readonly("gain", &OptimizationResult::gain)
        .def_readonly("element_gains", &OptimizationResult::element_gains)
        .def_readonly("trace", &OptimizationResult::trace)
        .def_readonly("evaluations", &OptimizationResult::evaluations);

    m.def(
        "optimize_siso",
        [](const PathBundle &paths, const FimGeometry &geom, const py::dict &settings) {
            const ExperimentConfig cfg = make_config(settings);
            py::gil_scoped_release release;
            return optimize_surface_siso(paths, geom, cfg.surface);
        },
        "paths"_a, "geometry"_a, "settings"_a = py::dict(), "Optimize shape and phases of the SISO link.");

    py::class_<AlternatingResult>(m, "AlternatingResult")
        .def_property_readonly("shape", [](const AlternatingResult &r) { return RVector(r.shape.values()); })
        .def_property_readonly("phases", [](const AlternatingResult &r) { return CVector(r.phases.vector()); })
        .def_property_readonly("beamformer", [](const AlternatingResult &r) { return r.beamformer.w; })
        .def_readonly("gain", &AlternatingResult::gain)
        .def_property_readonly("effective_gain", &AlternatingResult::effective_gain)
        .def_readonly("trace", &AlternatingResult::trace)
        .def_readonly("iterations", &AlternatingResult::iterations)
        .def_readonly("converged", &AlternatingResult::converged);

    m.def(
        "optimize_miso",
        [](const PathBundle &paths, const FimGeometry &geom, std::size_t antennas, double power,
           const py::dict &settings) {
            const ExperimentConfig cfg = make_config(settings);
            AlternatingConfig alt = cfg.alternating;
            alt.surface = cfg.surface;
            py::gil_scoped_release release;
            return alternating_optimize(paths, geom, antennas, power, alt);
        },
        "paths"_a, "geometry"_a, "antennas"_a, "power"_a, "settings"_a = py::dict(),
        "Alternating MRT, shape and phase optimization of the MISO link; power in watts.");

    py::class_<Table>(m, "Table")
        .def_readonly("metadata", &Table::metadata)
        .def_readonly("columns", &Table::columns)
        .def_property_readonly("rows", &table_rows)
        .def("to_csv", &to_csv)
        .def("to_json", &to_json);

    m.def(
        "landscape",
        [](const py::dict &settings, std::size_t points) {
            const ExperimentConfig cfg = make_config(settings);
            py::gil_scoped_release release;
            return run_element_landscape(cfg, cfg.seed, points);
        },
        "settings"_a = py::dict(), "points"_a = 1001);
    m.def(
        "gain_vs_dmax",
        [](const py::dict &settings, const std::vector<double> &grid, const std::vector<std::string> &methods) {
            const ExperimentConfig cfg = make_config(settings);
            const auto ms = parse_methods(methods);
            py::gil_scoped_release release;
            return run_gain_vs_dmax(cfg, grid, ms);
        },
        "settings"_a = py::dict(), "grid"_a = std::vector<double>{0.0, 1.0, 2.0, 3.0},
        "methods"_a = std::vector<std::string>{"pso"});
    m.def(
        "gain_vs_paths",
        [](const py::dict &settings, const std::vector<std::size_t> &grid) {
            const ExperimentConfig cfg = make_config(settings);
            py::gil_scoped_release release;
            return run_gain_vs_paths(cfg, grid);
        },
        "settings"_a = py::dict(), "grid"_a = std::vector<std::size_t>{1, 2, 3, 4, 5});
    m.def(
        "converge",
        [](const py::dict &settings) {
            const ExperimentConfig cfg = make_config(settings);
            py::gil_scoped_release release;
            return run_convergence(cfg);
        },
        "settings"_a = py::dict());
}
