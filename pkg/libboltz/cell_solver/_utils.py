import numpy as np

from ..velocity import discrete_maxwellian


class CellLocalProblem(object):
    """The nonlinear problem a g + r = (nu / eps) (M[g] - g) of one cell"""
    def __init__(self, a, r, nu, eps, grid, newton_tol=1e-12, max_newton=50):
        """
        CellLocalProblem Class Constructor.

        Parameters
        ----------
        a: np.ndarray
            Transport weight per velocity, >= 0.
        r: np.ndarray
            Source per velocity: upwind inflow, slope terms and explicit
            collision parts.
        nu: float
            Collision frequency, > 0.
        eps: float
            Knudsen number, > 0.
        grid: VelocityGrid
            Velocity grid.
        """
        super(CellLocalProblem, self).__init__()
        a = np.asarray(a, dtype=float)
        r = np.asarray(r, dtype=float)
        if a.shape != (grid.size,) or r.shape != (grid.size,):
            raise ValueError("a and r need one entry per velocity point.")
        if np.any(a < 0):
            raise ValueError("Transport weights must be non-negative.")
        if not nu > 0 or not eps > 0:
            raise ValueError("nu and eps must be positive, got nu=%r, eps=%r." % (nu, eps))
        self.a = a
        self.r = r
        self.nu = float(nu)
        self.eps = float(eps)
        self.grid = grid
        self.newton_tol = newton_tol
        self.max_newton = max_newton

    @property
    def kappa(self):
        return self.nu / self.eps

    def maxwellian(self, g, init=None):
        return discrete_maxwellian(g, self.grid, tol=self.newton_tol, max_newton=self.max_newton, init=init)

    def residual(self, g, M):
        """Velocity-quadrature L2 norm of a g + r - (nu / eps) (M - g)."""
        res = self.a * g + self.r - self.kappa * (M - g)
        return float(np.sqrt(np.sum(self.grid.weights * res ** 2)))

    def update(self, M):
        """g = (a + nu / eps)^{-1} ((nu / eps) M - r)."""
        return (self.kappa * M - self.r) / (self.a + self.kappa)


class MomentDefect(object):
    """Weighted moments s = sum_k w_k phi_k [a_k (M_k - g_k) - r_k]"""
    def __init__(self, values):
        super(MomentDefect, self).__init__()
        self.values = np.asarray(values, dtype=float)

    @property
    def exists(self):
        """s_0 > 0 and s_0 s_{d+1} > sum_i s_i^2."""
        s = self.values
        return bool(s[0] > 0.0 and s[0] * s[-1] > np.dot(s[1:-1], s[1:-1]))

    def __repr__(self):
        return "MomentDefect(%s)" % np.array2string(self.values, precision=4)


def assemble_cell_problem(cell, values, slopes, stencil, nu, eps, penalty=None, rhs=None,
                          newton_tol=1e-12, max_newton=50):
    """
    Cell-local problem of one cell during a sweep.

    Parameters
    ----------
    cell: tuple
        Cell index.
    values: np.ndarray
        Current field values; already-visited cells hold their new values.
    slopes: np.ndarray
        Slopes frozen from the pre-scan state.
    stencil: TransportStencil
        Upwind stencil with wall closures.
    nu: float
        Collision frequency of the cell.
    eps: float
        Knudsen number.
    penalty: np.ndarray
        Explicit collision remainder P[f] of the cell (binary collisions).
    rhs: np.ndarray
        Right-hand side of a coarse-level equation.

    Returns
    -------
    CellLocalProblem
        The problem with r = transport source - P / eps - rhs.
    """
    r = stencil.cell_source(values, slopes, cell)
    if penalty is not None:
        r = r - penalty / eps
    if rhs is not None:
        r = r - rhs
    return CellLocalProblem(stencil.a, r, nu, eps, stencil.grid, newton_tol=newton_tol, max_newton=max_newton)
