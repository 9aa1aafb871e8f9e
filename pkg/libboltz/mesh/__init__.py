"""Spatial finite-volume discretization.
"""
from ._mesh import SpatialMesh
from ._mesh import DistributionField
from ._mesh import total_mass
from ._mesh import rescale_mass
from ._mesh import compute_slopes
from ._mesh import equilibrium_field
from ._wall import WallSpec
from ._wall import WallClosure
from ._wall import wall_ghost_distribution
from ._transport import TransportStencil
from ._transport import build_stencil
from ._transport import collision_field
from ._transport import steady_operator
from ._transport import residual_norm
from ._transport import global_residual
from .base import moments_df
from .base import save_moments_csv

__ALL__ = [
    "SpatialMesh",
    "DistributionField",
    "total_mass",
    "rescale_mass",
    "compute_slopes",
    "equilibrium_field",
    "WallSpec",
    "WallClosure",
    "wall_ghost_distribution",
    "TransportStencil",
    "build_stencil",
    "collision_field",
    "steady_operator",
    "residual_norm",
    "global_residual",
    "moments_df",
    "save_moments_csv",
]
