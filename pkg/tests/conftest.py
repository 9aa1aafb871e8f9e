import numpy as np
import pytest

from libboltz.velocity import build_velocity_grid
from libboltz.collision import CollisionModel
from libboltz.mesh import SpatialMesh, WallSpec, equilibrium_field


def walls_1d(T_left=1.0, T_right=2.0, dim_v=1):
    lo, hi = np.zeros(dim_v), np.zeros(dim_v)
    lo[0], hi[0] = -1.0, 1.0
    return [WallSpec(T_left, lo, name="left"), WallSpec(T_right, hi, name="right")]


@pytest.fixture
def grid1v():
    return build_velocity_grid(1, 50, 6.0)


@pytest.fixture
def heat_problem():
    """Factory of (solver config, initial field) for the 1D1V BGK heat problem."""
    def _make(N=16, K=16, L=6.0, T=(1.0, 2.0), eps=1.0, order=1, **kwargs):
        grid = build_velocity_grid(1, K, L)
        mesh = SpatialMesh([(-0.5, 0.5)], (N,))
        config = {
            "walls": walls_1d(*T),
            "collision": CollisionModel("BGK", frequency="constant", nu0=1.0),
            "eps": eps,
            "order": order,
            "threads": 1,
        }
        config.update(kwargs)
        field = equilibrium_field(mesh, grid, float(np.mean(T)), mesh.domain_volume, order=order)
        return config, field
    return _make
