from ..utils import ConvergenceError


def fp_solve(problem, g0, tol=1e-8, max_iter=500):
    """
    Plain fixed-point iteration g <- (a + nu/eps)^{-1} ((nu/eps) M[g] - r).

    Parameters
    ----------
    problem: CellLocalProblem
        Problem to solve.
    g0: np.ndarray
        Initial guess, usually the previous outer iterate of the cell.
    tol: float
        Stopping value of the inner residual.
    max_iter: int
        Maximum number of updates.

    Returns
    -------
    tuple
        (solution, number of updates).
    """
    g = g0.copy()
    params = None
    for n_iter in range(max_iter + 1):
        params, M = problem.maxwellian(g, init=params)
        res = problem.residual(g, M)
        if res <= tol:
            return g, n_iter
        if n_iter == max_iter:
            break
        g = problem.update(M)
    raise ConvergenceError("Fixed-point iteration did not converge in %d iterations" % max_iter,
                           residual=res, iterations=max_iter)
