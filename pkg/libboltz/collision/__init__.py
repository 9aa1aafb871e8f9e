"""Collision right-hand sides.
"""
from ._bgk import CollisionModel
from ._bgk import collision_frequency
from ._bgk import bgk_operator
from ._bgk import collision_rhs
from ._spectral import SpectralOperator
from ._spectral import build_spectral_operator
from ._spectral import default_truncation
from ._spectral import fsm_collision
from ._spectral import corrected_collision
from ._spectral import penalty_remainder
from ._spectral import save_spectral_operator
from ._spectral import load_spectral_operator

__ALL__ = [
    "CollisionModel",
    "collision_frequency",
    "bgk_operator",
    "collision_rhs",
    "SpectralOperator",
    "build_spectral_operator",
    "default_truncation",
    "fsm_collision",
    "corrected_collision",
    "penalty_remainder",
    "save_spectral_operator",
    "load_spectral_operator",
]
