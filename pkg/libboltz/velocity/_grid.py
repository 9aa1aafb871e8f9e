import numpy as np

CENTERINGS = ("cell", "node")


class VelocityGrid(object):
    """Uniform tensor-product velocity grid on the box [-L, L]^d"""
    def __init__(self, dim, K, L, centering="cell"):
        """
        VelocityGrid Class Constructor.

        Parameters
        ----------
        dim: int
            Velocity dimension d, one of 1, 2 or 3.
        K: int
            Number of points per axis.
        L: float
            Truncation half-width of the velocity box.
        centering: str
            'cell' places points at -L + (i - 1/2) dv, i = 1..K.
            'node' places points at i dv, i = -K/2+1..K/2 (periodic box, needs even K).
        """
        super(VelocityGrid, self).__init__()
        if dim not in (1, 2, 3):
            raise ValueError("Velocity dimension must be 1, 2 or 3, got %r." % (dim,))
        if int(K) != K or K < 2:
            raise ValueError("K must be an integer >= 2, got %r." % (K,))
        if not L > 0:
            raise ValueError("L must be positive, got %r." % (L,))
        if centering not in CENTERINGS:
            raise ValueError("centering must be one of %s, got %r." % (CENTERINGS, centering))
        K = int(K)
        if centering == "node" and K % 2 != 0:
            raise ValueError("node-periodic grids need an even K, got %d." % K)

        self.dim = dim
        self.K = K
        self.L = float(L)
        self.centering = centering
        self.dv = 2.0 * self.L / K
        if centering == "cell":
            self.indices = None
            self.axis = -self.L + (np.arange(1, K + 1) - 0.5) * self.dv
        else:
            self.indices = np.arange(-K // 2 + 1, K // 2 + 1)
            self.axis = self.indices * self.dv

        mesh = np.meshgrid(*([self.axis] * dim), indexing="ij")
        self.points = np.stack([m.ravel() for m in mesh], axis=1)
        self.size = self.points.shape[0]
        self.weights = np.full(self.size, self.dv ** dim)
        self.sq = np.sum(self.points ** 2, axis=1)
        # collision invariants (1, v, |v|^2) per point
        self.basis = np.column_stack([np.ones(self.size), self.points, self.sq])

    @property
    def shape(self):
        return (self.K,) * self.dim

    def integrate(self, values):
        """Quadrature sum of `values` over the last axis."""
        return values @ self.weights

    def __repr__(self):
        return "VelocityGrid(dim=%d, K=%d, L=%g, centering=%r)" % (self.dim, self.K, self.L, self.centering)


def build_velocity_grid(d, K, L, centering="cell"):
    """
    Build a uniform velocity grid with equal quadrature weights dv^d.

    Parameters
    ----------
    d: int
        Velocity dimension.
    K: int
        Points per axis, K >= 2.
    L: float
        Truncation half-width, L > 0.
    centering: str
        'cell' or 'node'.

    Returns
    -------
    VelocityGrid
        The grid.

    Examples
    --------
    >>> grid = build_velocity_grid(1, 50, 6.0)
    >>> grid.dv, grid.weights.sum()
    (0.24, 12.0)
    """
    return VelocityGrid(d, K, L, centering)
