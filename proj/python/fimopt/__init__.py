# SPDX-License-Identifier: Apache-2.0
#
# fimopt: surface-shape and phase optimization for flexible intelligent metasurfaces
# Copyright (C) 2026 The fimopt authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Shape and phase optimization for flexible intelligent metasurfaces."""

from ._fimopt import (
    AlternatingResult,
    DegenerateScenario,
    Geometry,
    InvalidArgument,
    OptimizationResult,
    PathBundle,
    Table,
    UnsupportedInput,
    __version__,
    converge,
    element_gain,
    gain_vs_dmax,
    gain_vs_paths,
    landscape,
    optimize_miso,
    optimize_siso,
    sample_scenario,
    siso_gain,
)

__all__ = [
    "AlternatingResult",
    "DegenerateScenario",
    "Geometry",
    "InvalidArgument",
    "OptimizationResult",
    "PathBundle",
    "Table",
    "UnsupportedInput",
    "__version__",
    "converge",
    "element_gain",
    "gain_vs_dmax",
    "gain_vs_paths",
    "landscape",
    "optimize_miso",
    "optimize_siso",
    "sample_scenario",
    "siso_gain",
]
