# Copyright 2026 The clockpress Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Qubit-clock compression simulator.

Thin Python layer over the C++ core. Spins and magnetic numbers are passed
as floats (0.5, 1.0, 1.5, ...); matrices are NumPy arrays whose rows and
columns run over m = J, J-1, ..., -J.
"""

from clockpress._core import (
    ConfigError,
    SizeRefusal,
    clebsch_gordan,
    compression_error,
    convert,
    error_bound,
    evolve,
    frequency_projection,
    full_product_state,
    make_partition,
    make_window,
    multiplicity,
    oracle_convert,
    projection_error_bound,
    qj_weights,
    rho_pJ,
    rotation_angle,
    run_experiment,
    starved_run,
    wigner_d,
)

__all__ = [
    "ConfigError",
    "SizeRefusal",
    "clebsch_gordan",
    "compression_error",
    "convert",
    "error_bound",
    "evolve",
    "frequency_projection",
    "full_product_state",
    "make_partition",
    "make_window",
    "multiplicity",
    "oracle_convert",
    "projection_error_bound",
    "qj_weights",
    "rho_pJ",
    "rotation_angle",
    "run_experiment",
    "starved_run",
    "wigner_d",
]

__version__ = "0.1.0"
