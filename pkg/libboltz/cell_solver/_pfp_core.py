"""Preconditioned fixed-point iteration for the cell-local problem.

Each iteration first fixes the equilibrium part by matching the a-weighted
moments of the defect (the small-eps limit of the cell equation), then
updates the full distribution with that Maxwellian.
"""
import numpy as np

from ..velocity import params_from_moments, weighted_maxwellian
from ..utils import ConvergenceError, ExistenceError, NonPhysicalStateError
from ._utils import MomentDefect
from ._fp_core import fp_solve


def precond_moment_defect(problem, g, M=None):
    """
    Moment defect s = sum_k w_k phi_k [a_k (M[g]_k - g_k) - r_k].

    Parameters
    ----------
    problem: CellLocalProblem
        Problem being solved.
    g: np.ndarray
        Current inner iterate.
    M: np.ndarray
        M[g] if already available.

    Returns
    -------
    MomentDefect
        The defect.
    """
    if M is None:
        _, M = problem.maxwellian(g)
    grid = problem.grid
    return MomentDefect(grid.basis.T @ (grid.weights * (problem.a * (M - g) - problem.r)))


def relaxed_moment_defect(problem, g, M, tau):
    """
    Target of the relaxed first step
    (1 + tau) sum phi a M_new = sum phi [(1 + tau) a M[g] - a g - r].

    With tau = 0 this is `precond_moment_defect`.
    """
    grid = problem.grid
    w = grid.weights
    equilibrium = grid.basis.T @ (w * problem.a * M)
    rest = grid.basis.T @ (w * (problem.a * g + problem.r))
    return MomentDefect(equilibrium - rest / (1.0 + tau))


def solve_weighted_maxwellian(s, problem, tol=1e-12, init=None):
    """
    Exponential-family M with sum_k w_k phi_k a_k M_k = s.

    Parameters
    ----------
    s: MomentDefect
        Target weighted moments.
    problem: CellLocalProblem
        Supplies the weights a_k and the grid.
    tol: float
        Newton tolerance relative to the largest target moment.
    init: MaxwellianParams
        Starting coefficients, usually those of M[g]. Defaults to the
        continuous formulas applied to s read as plain moments.

    Returns
    -------
    tuple
        (MaxwellianParams, sampled values).
    """
    if not s.exists:
        raise ExistenceError("Moment defect admits no weighted Maxwellian: %r" % s)
    grid = problem.grid
    if init is None:
        v = s.values
        rho = v[0]
        U = v[1:-1] / rho
        T = (v[-1] / rho - np.dot(U, U)) / grid.dim
        init = params_from_moments(rho, U, T, grid.dim)
    return weighted_maxwellian(s.values, grid, grid.weights * problem.a, init,
                               tol=tol, max_newton=problem.max_newton)


def pfp_solve(problem, g0, tol=1e-8, max_iter=500, tau=0.0):
    """
    Preconditioned fixed-point iteration with fixed-point fallback.

    Parameters
    ----------
    problem: CellLocalProblem
        Problem to solve.
    g0: np.ndarray
        Initial guess.
    tol: float
        Stopping value of the inner residual.
    max_iter: int
        Maximum number of updates, fallback included.
    tau: float
        Relaxation factor tried when the defect admits no solution;
        0 disables it.

    Returns
    -------
    tuple
        (solution, number of updates, fallback flag).
    """
    g = g0.copy()
    params = None
    n_iter = 0
    while True:
        try:
            params, M = problem.maxwellian(g, init=params)
        except NonPhysicalStateError:
            if n_iter == 0:
                raise
            g, n_fp = fp_solve(problem, g_good, tol=tol, max_iter=max_iter - n_iter + 1)
            return g, n_iter - 1 + n_fp, True
        res = problem.residual(g, M)
        if res <= tol:
            return g, n_iter, False
        if n_iter >= max_iter:
            raise ConvergenceError("Preconditioned iteration did not converge in %d iterations" % max_iter,
                                   residual=res, iterations=n_iter)

        s = precond_moment_defect(problem, g, M)
        if not s.exists and tau > 0.0:
            s = relaxed_moment_defect(problem, g, M, tau)
        try:
            _, M_new = solve_weighted_maxwellian(s, problem, tol=problem.newton_tol, init=params)
        except (ExistenceError, ConvergenceError):
            g, n_fp = fp_solve(problem, g, tol=tol, max_iter=max_iter - n_iter)
            return g, n_iter + n_fp, True

        g_good = g
        g = problem.update(M_new)
        n_iter += 1
