import numpy as np

from ..velocity import maxwellian_from_moments
from ..utils import _check_ndarray
from ..utils import NonPhysicalStateError


class SpatialMesh(object):
    """Uniform rectangular finite-volume mesh in 1D or 2D"""
    def __init__(self, box, shape):
        """
        SpatialMesh Class Constructor.

        Parameters
        ----------
        box: list of tuple
            (lower, upper) bounds per axis.
        shape: tuple of int
            Cells per axis.
        """
        super(SpatialMesh, self).__init__()
        box = [tuple(float(b) for b in bounds) for bounds in box]
        shape = tuple(int(n) for n in np.atleast_1d(shape))
        if len(box) not in (1, 2) or len(box) != len(shape):
            raise ValueError("box and shape must describe 1 or 2 axes, got %d and %d." % (len(box), len(shape)))
        for (lo, hi), n in zip(box, shape):
            if not hi > lo:
                raise ValueError("Empty interval [%g, %g]." % (lo, hi))
            if n < 1:
                raise ValueError("Cell count must be positive, got %d." % n)
        self.box = box
        self.shape = shape
        self.dim = len(shape)
        self.h = tuple((hi - lo) / n for (lo, hi), n in zip(box, shape))
        self.cell_volume = float(np.prod(self.h))
        self.domain_volume = float(np.prod([hi - lo for lo, hi in box]))
        self.n_cells = int(np.prod(shape))

    def centers(self, axis=0):
        lo, _ = self.box[axis]
        return lo + (np.arange(self.shape[axis]) + 0.5) * self.h[axis]

    def coarsen(self):
        """Mesh with half the cells per axis."""
        for n in self.shape:
            if n % 2 != 0:
                raise ValueError("Cannot coarsen an odd cell count %d." % n)
        return SpatialMesh(self.box, tuple(n // 2 for n in self.shape))

    def cells(self, reverse=False):
        """Cell indices in lexicographic order, x-major."""
        order = list(np.ndindex(*self.shape))
        if reverse:
            order.reverse()
        return order

    def __eq__(self, other):
        return isinstance(other, SpatialMesh) and self.box == other.box and self.shape == other.shape

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return "SpatialMesh(box=%s, shape=%s)" % (self.box, self.shape)


class DistributionField(object):
    """Cell averages of the distribution, one velocity vector per cell"""
    def __init__(self, mesh, grid, values, order=1):
        super(DistributionField, self).__init__()
        _check_ndarray(values)
        if values.shape != mesh.shape + (grid.size,):
            raise ValueError("values must have shape %s, got %s." % (mesh.shape + (grid.size,), values.shape))
        if order not in (1, 2):
            raise ValueError("Scheme order must be 1 or 2, got %r." % (order,))
        if not np.all(np.isfinite(values)):
            raise NonPhysicalStateError("Distribution contains non-finite values.")
        self.mesh = mesh
        self.grid = grid
        self.values = values
        self.order = order

    def copy(self):
        return DistributionField(self.mesh, self.grid, self.values.copy(), self.order)

    def with_values(self, values, mesh=None):
        return DistributionField(self.mesh if mesh is None else mesh, self.grid, values, self.order)


def total_mass(field):
    """Sum over cells of dx^dim * sum_k w_k f_jk."""
    return field.mesh.cell_volume * float(np.sum(field.values @ field.grid.weights))


def rescale_mass(field, C):
    """
    Uniformly scale the field so that its total mass equals C.

    Parameters
    ----------
    field: DistributionField
        Field with positive total mass.
    C: float
        Target mass.

    Returns
    -------
    DistributionField
        Scaled copy.
    """
    m = total_mass(field)
    if not m > 0:
        raise NonPhysicalStateError("Total mass must be positive to rescale, got %r" % m)
    return field.with_values(field.values * (C / m))


def compute_slopes(field):
    """
    Undivided slopes per axis for the piecewise-linear reconstruction.

    Parameters
    ----------
    field: DistributionField
        Field to reconstruct.

    Returns
    -------
    np.ndarray
        Shape (dim,) + values.shape. Central differences in the interior,
        one-sided at the boundary cells; zero for the first-order scheme.
    """
    values = field.values
    slopes = np.zeros((field.mesh.dim,) + values.shape)
    if field.order == 1:
        return slopes
    for axis, n in enumerate(field.mesh.shape):
        if n < 2:
            raise ValueError("Second-order slopes need at least 2 cells per axis, got %d." % n)
        slopes[axis] = np.gradient(values, axis=axis)
    return slopes


def equilibrium_field(mesh, grid, T, C, order=1):
    """
    Uniform discrete Maxwellian at rest with total mass C.

    Parameters
    ----------
    mesh: SpatialMesh
        Spatial mesh.
    grid: VelocityGrid
        Velocity grid.
    T: float
        Discrete temperature of every cell.
    C: float
        Total mass.
    order: int
        Scheme order of the returned field.

    Returns
    -------
    DistributionField
        Every cell holds the discrete Maxwellian with discrete moments
        (C / |Omega|, 0, T).
    """
    if not T > 0 or not C > 0:
        raise ValueError("Temperature and mass must be positive, got T=%r, C=%r." % (T, C))
    cell = maxwellian_from_moments(C / mesh.domain_volume, None, T, grid)
    values = np.broadcast_to(cell, mesh.shape + (grid.size,)).copy()
    return DistributionField(mesh, grid, values, order)
