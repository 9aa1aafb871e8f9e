"""Velocity-space discretization.
"""
from ._grid import VelocityGrid
from ._grid import build_velocity_grid
from ._maxwellian import Moments
from ._maxwellian import MaxwellianParams
from ._maxwellian import moments
from ._maxwellian import heat_flux
from ._maxwellian import evaluate_exponential
from ._maxwellian import sample_maxwellian
from ._maxwellian import maxwellian_from_moments
from ._maxwellian import params_from_moments
from ._maxwellian import discrete_maxwellian
from ._maxwellian import weighted_maxwellian

__ALL__ = [
    "VelocityGrid",
    "build_velocity_grid",
    "Moments",
    "MaxwellianParams",
    "moments",
    "heat_flux",
    "evaluate_exponential",
    "sample_maxwellian",
    "maxwellian_from_moments",
    "params_from_moments",
    "discrete_maxwellian",
    "weighted_maxwellian",
]
