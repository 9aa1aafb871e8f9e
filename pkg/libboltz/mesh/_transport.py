"""Upwind transport stencils with diffusive walls, and the steady-state residual.
"""
import numpy as np

from ..collision import collision_rhs
from ..utils import map_cells
from ._mesh import compute_slopes
from ._wall import WallClosure


class TransportStencil(object):
    """Dimension-by-dimension upwind fluxes of one mesh / velocity grid / wall set"""
    def __init__(self, mesh, grid, walls):
        super(TransportStencil, self).__init__()
        if grid.dim < mesh.dim:
            raise ValueError("Velocity dimension %d is below the spatial dimension %d." % (grid.dim, mesh.dim))
        closures = {}
        for wall in walls:
            if wall.axis >= mesh.dim:
                raise ValueError("Wall %r is normal to axis %d of a %dD mesh." % (wall.name, wall.axis, mesh.dim))
            key = (wall.axis, wall.side)
            if key in closures:
                raise ValueError("Two walls on face %s." % (key,))
            closures[key] = WallClosure(wall, grid)
        for axis in range(mesh.dim):
            for side in ("lo", "hi"):
                if (axis, side) not in closures:
                    raise ValueError("No wall on the %s face of axis %d." % (side, axis))
        self.mesh = mesh
        self.grid = grid
        self.closures = closures
        self.velocity = [grid.points[:, axis] for axis in range(mesh.dim)]
        self.vpos = [np.maximum(v, 0.0) for v in self.velocity]
        self.vneg = [np.minimum(v, 0.0) for v in self.velocity]
        # diagonal weight of the cell-local problem
        self.a = sum(np.abs(v) / h for v, h in zip(self.velocity, mesh.h))

    def divergence(self, values, slopes):
        """
        Flux difference sum_a (F_{j+1/2} - F_{j-1/2}) / h_a for every cell.

        Parameters
        ----------
        values: np.ndarray
            Cell averages, mesh.shape + (n_v,).
        slopes: np.ndarray
            Slopes from `compute_slopes`.

        Returns
        -------
        np.ndarray
            Same shape as values.
        """
        out = np.zeros_like(values)
        for axis, h in enumerate(self.mesh.h):
            s = slopes[axis]
            upper = values + 0.5 * s
            lower = values - 0.5 * s
            n = values.shape[axis]
            ghost_lo = self.closures[(axis, "lo")].merged(np.take(lower, 0, axis=axis))
            ghost_hi = self.closures[(axis, "hi")].merged(np.take(upper, n - 1, axis=axis))
            left = np.concatenate([np.expand_dims(ghost_lo, axis), np.take(upper, range(n - 1), axis=axis)], axis=axis)
            right = np.concatenate([np.take(lower, range(1, n), axis=axis), np.expand_dims(ghost_hi, axis)], axis=axis)
            vp, vn = self.vpos[axis], self.vneg[axis]
            out += ((vp * upper + vn * right) - (vp * left + vn * lower)) / h
        return out

    def cell_source(self, values, slopes, cell):
        """
        Source r of the cell-local problem a g + r = Q(g) / eps.

        Neighbor values are read from `values` as they currently stand, so
        that during a sweep upwind neighbors already carry their new values.
        Wall emission is evaluated from the cell's current face values.
        """
        r = np.zeros(self.grid.size)
        for axis, h in enumerate(self.mesh.h):
            s = slopes[axis]
            i = cell[axis]
            n = self.mesh.shape[axis]
            if i > 0:
                nb = cell[:axis] + (i - 1,) + cell[axis + 1:]
                left = values[nb] + 0.5 * s[nb]
            else:
                left = self.closures[(axis, "lo")].merged(values[cell] - 0.5 * s[cell])
            if i < n - 1:
                nb = cell[:axis] + (i + 1,) + cell[axis + 1:]
                right = values[nb] - 0.5 * s[nb]
            else:
                right = self.closures[(axis, "hi")].merged(values[cell] + 0.5 * s[cell])
            r += (self.vneg[axis] * right - self.vpos[axis] * left + 0.5 * self.velocity[axis] * s[cell]) / h
        return r


def build_stencil(field, config):
    return TransportStencil(field.mesh, field.grid, config["walls"])


def collision_field(field, config):
    """Collision term Q of every cell."""
    grid = field.grid
    values = field.values
    model = config["collision"]
    tol = config.get("newton_tol", 1e-12)
    cells = field.mesh.cells()
    terms = map_cells(lambda c: collision_rhs(values[c], grid, model, tol=tol), cells, config.get("threads", 1))
    out = np.empty_like(values)
    for c, q in zip(cells, terms):
        out[c] = q
    return out


def steady_operator(field, config):
    """
    Discrete steady-state operator R(f) = v.grad f - Q(f) / eps, per cell and velocity.
    """
    stencil = build_stencil(field, config)
    transport = stencil.divergence(field.values, compute_slopes(field))
    return transport - collision_field(field, config) / config["eps"]


def residual_norm(field, values):
    """sqrt(dx^dim * sum_j sum_k w_k values_jk^2)."""
    return float(np.sqrt(field.mesh.cell_volume * np.sum((values ** 2) @ field.grid.weights)))


def global_residual(field, config, rhs=None):
    """
    Discrete L2 norm of the steady-state residual.

    Parameters
    ----------
    field: DistributionField
        Current iterate.
    config: dict
        Solver configuration with 'walls', 'collision' and 'eps'.
    rhs: np.ndarray
        Right-hand side of a coarse-level equation R(f) = rhs.

    Returns
    -------
    float
        Residual norm.
    """
    R = steady_operator(field, config)
    if rhs is not None:
        R = R - rhs
    return residual_norm(field, R)
