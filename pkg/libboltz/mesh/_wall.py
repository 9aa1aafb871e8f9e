import numpy as np

from ..velocity import maxwellian_from_moments
from ..utils import NonPhysicalStateError

SIDES = ("lo", "hi")


class WallSpec(object):
    """Fully diffusive wall"""
    def __init__(self, temperature, normal, velocity=None, name=None):
        """
        WallSpec Class Constructor.

        Parameters
        ----------
        temperature: float
            Wall temperature, > 0.
        normal: array_like
            Outward unit normal in velocity space, a signed coordinate vector
            (-e_a for the lower face of axis a, +e_a for the upper face).
        velocity: array_like
            Tangential wall velocity, defaults to rest.
        name: str
            Label used in configuration, e.g. 'left' or 'top'.
        """
        super(WallSpec, self).__init__()
        normal = np.asarray(normal, dtype=float)
        velocity = np.zeros_like(normal) if velocity is None else np.asarray(velocity, dtype=float)
        if not temperature > 0:
            raise ValueError("Wall temperature must be positive, got %r." % (temperature,))
        nz = np.nonzero(normal)[0]
        if len(nz) != 1 or abs(abs(normal[nz[0]]) - 1.0) > 0.0:
            raise ValueError("Wall normal must be a signed coordinate vector, got %s." % normal)
        if velocity.shape != normal.shape:
            raise ValueError("Wall velocity and normal dimensions differ.")
        if abs(np.dot(velocity, normal)) > 1e-14:
            raise ValueError("Wall velocity must be tangential, got U.n = %g." % np.dot(velocity, normal))
        self.temperature = float(temperature)
        self.normal = normal
        self.velocity = velocity
        self.axis = int(nz[0])
        self.side = "lo" if normal[nz[0]] < 0 else "hi"
        self.name = name

    def __repr__(self):
        return "WallSpec(name=%r, T=%g, U=%s, n=%s)" % (self.name, self.temperature, self.velocity, self.normal)


class WallClosure(object):
    """Diffusive re-emission of one wall on a velocity grid"""
    def __init__(self, wall, grid):
        super(WallClosure, self).__init__()
        if len(wall.normal) != grid.dim:
            raise ValueError("Wall normal has dimension %d, velocity grid %d." % (len(wall.normal), grid.dim))
        self.wall = wall
        vn = (grid.points - wall.velocity) @ wall.normal
        self.outgoing = vn > 0.0
        self.incoming = vn < 0.0
        self.out_weights = (grid.weights * vn)[self.outgoing]
        # unit-density discrete wall Maxwellian on the incoming half
        self.emitted = maxwellian_from_moments(1.0, wall.velocity, wall.temperature, grid)[self.incoming]
        self.emitted_flux = np.sum(grid.weights[self.incoming] * np.abs(vn[self.incoming]) * self.emitted)

    def density(self, face_values):
        """
        Wall density rho_w from the outgoing half-flux.

        Notes
        -----
        rho_w is normalized by the discrete incoming flux of the unit wall
        Maxwellian, so the merged distribution carries no net discrete flux.
        """
        flux = face_values[..., self.outgoing] @ self.out_weights
        if np.any(flux <= 0.0):
            raise NonPhysicalStateError("Outgoing flux at wall %s is not positive" % (self.wall.name or self.wall.normal))
        return flux / self.emitted_flux

    def merged(self, face_values):
        """Outgoing face values with incoming entries replaced by the wall emission."""
        rho_w = self.density(face_values)
        merged = np.array(face_values, dtype=float, copy=True)
        merged[..., self.incoming] = np.multiply.outer(rho_w, self.emitted)
        return merged


def wall_ghost_distribution(f_boundary_cell, wall, grid):
    """
    Merged wall distribution at a boundary face.

    Parameters
    ----------
    f_boundary_cell: np.ndarray
        Face values of the boundary cell (reconstructed for the second-order scheme).
    wall: WallSpec
        Wall description.
    grid: VelocityGrid
        Velocity grid.

    Returns
    -------
    np.ndarray
        The input for outgoing velocities, rho_w times the wall Maxwellian
        for incoming velocities.
    """
    return WallClosure(wall, grid).merged(f_boundary_cell)
