"""Moments and the discrete Maxwellian on a velocity grid.
"""
from collections import namedtuple

import numpy as np

from ..utils import _check_ndarray
from ..utils import NonPhysicalStateError, ConvergenceError

Moments = namedtuple("Moments", ["rho", "U", "T", "q"], defaults=(None,))
MaxwellianParams = namedtuple("MaxwellianParams", ["alpha", "beta", "gamma"])

_LOG_MAX = np.log(np.finfo(float).max) - 1.0
_MIN_STEP = 1e-10
# a Maxwellian this close to its input is replaced by the input itself
_SNAP_RTOL = 1e-10


def _check_values(f_values, grid):
    _check_ndarray(f_values)
    if f_values.shape != (grid.size,):
        raise ValueError("Expected %d velocity values, got shape %s." % (grid.size, f_values.shape))


def _admissible(m):
    """Interior of the moment cone: m0 > 0 and m0 * m_{d+1} > |m_1..d|^2."""
    return m[0] > 0.0 and m[0] * m[-1] > np.dot(m[1:-1], m[1:-1])


def moments(f_values, grid):
    """
    Density, bulk velocity and temperature of a distribution.

    Parameters
    ----------
    f_values: np.ndarray
        One value per grid point.
    grid: VelocityGrid
        Velocity grid.

    Returns
    -------
    Moments
        rho, U and T (q left empty).
    """
    _check_values(f_values, grid)
    wf = grid.weights * f_values
    rho = np.sum(wf)
    if not np.isfinite(rho) or rho <= 0.0:
        raise NonPhysicalStateError("Density is not positive: rho = %r" % rho)
    U = wf @ grid.points / rho
    c2 = np.sum((grid.points - U) ** 2, axis=1)
    T = wf @ c2 / (grid.dim * rho)
    if not T > 0.0:
        raise NonPhysicalStateError("Temperature is not positive: T = %r" % T)
    return Moments(rho, U, T)


def heat_flux(f_values, grid, U):
    """
    Heat flux q = 1/2 sum_k w_k (v_k - U) |v_k - U|^2 f_k.

    Parameters
    ----------
    f_values: np.ndarray
        One value per grid point.
    grid: VelocityGrid
        Velocity grid.
    U: np.ndarray
        Bulk velocity to center on.

    Returns
    -------
    np.ndarray
        Heat flux vector of length d.
    """
    _check_values(f_values, grid)
    c = grid.points - np.asarray(U, dtype=float)
    c2 = np.sum(c ** 2, axis=1)
    return 0.5 * (grid.weights * f_values * c2) @ c


def params_from_moments(rho, U, T, dim):
    """Coefficients of the continuous Maxwellian with the given moments."""
    U = np.asarray(U, dtype=float)
    alpha = np.log(rho) - 0.5 * dim * np.log(2.0 * np.pi * T) - np.dot(U, U) / (2.0 * T)
    return MaxwellianParams(alpha, U / T, 1.0 / (2.0 * T))


def _to_vector(params):
    return np.concatenate([[params.alpha], np.atleast_1d(params.beta), [params.gamma]]).astype(float)


def _from_vector(theta):
    return MaxwellianParams(float(theta[0]), theta[1:-1].copy(), float(theta[-1]))


def evaluate_exponential(params, grid):
    """
    Sample exp(alpha + beta.v - gamma |v|^2) on the grid.

    Parameters
    ----------
    params: MaxwellianParams
        Exponential-family coefficients, gamma > 0.
    grid: VelocityGrid
        Velocity grid.

    Returns
    -------
    np.ndarray
        Positive values, one per grid point. Exponents are clipped below the
        float overflow threshold.
    """
    if not params.gamma > 0.0:
        raise ValueError("gamma must be positive, got %r." % (params.gamma,))
    expo = params.alpha + grid.points @ np.atleast_1d(params.beta) - params.gamma * grid.sq
    return np.exp(np.minimum(expo, _LOG_MAX))


def sample_maxwellian(rho, U, T, grid):
    """Continuous Maxwellian rho (2 pi T)^{-d/2} exp(-|v - U|^2 / 2T) sampled on the grid."""
    return evaluate_exponential(params_from_moments(rho, U, T, grid.dim), grid)


def maxwellian_from_moments(rho, U, T, grid, tol=1e-12, max_newton=50):
    """
    Discrete Maxwellian whose discrete density, bulk velocity and temperature
    are rho, U and T.

    Parameters
    ----------
    rho: float
        Density, > 0.
    U: array_like
        Bulk velocity, None for rest.
    T: float
        Temperature, > 0.
    grid: VelocityGrid
        Velocity grid.

    Returns
    -------
    np.ndarray
        Exponential-family values. The discrete mass is exactly rho.
    """
    if not rho > 0 or not T > 0:
        raise ValueError("Density and temperature must be positive, got rho=%r, T=%r." % (rho, T))
    U = np.zeros(grid.dim) if U is None else np.asarray(U, dtype=float)
    # unit density first, so equal (U, T) give proportional shapes
    target = np.concatenate([[1.0], U, [grid.dim * T + np.dot(U, U)]])
    _, values, _, _ = _newton_moments(target, grid, grid.weights,
                                      _to_vector(params_from_moments(1.0, U, T, grid.dim)), tol, max_newton)
    return values * (rho / np.sum(grid.weights * values))


def _newton_moments(target, grid, weights, theta, tol, max_newton):
    """
    Damped Newton for sum_k weights_k phi_k exp(psi_k . theta) = target.

    Returns
    -------
    tuple
        (theta, values, accepted steps, final residual inf-norm).

    Notes
    -----
    psi = (1, v, -|v|^2) so that theta = (alpha, beta, gamma). The step is
    halved until the residual strictly decreases. Once the tolerance is met a
    single polishing step is tried and kept only when it improves.
    """
    basis = grid.basis
    psi = basis.copy()
    psi[:, -1] *= -1.0
    scale = max(np.max(np.abs(target)), np.finfo(float).tiny)
    tol_abs = tol * scale

    def _evaluate(th):
        values = np.exp(np.minimum(psi @ th, _LOG_MAX))
        resid = basis.T @ (weights * values) - target
        return values, resid

    values, resid = _evaluate(theta)
    norm = np.max(np.abs(resid))
    n_iter = 0
    while True:
        converged = norm <= tol_abs
        if n_iter >= max_newton:
            if converged:
                break
            raise ConvergenceError("Maxwellian Newton did not converge in %d iterations" % max_newton,
                                   residual=norm / scale, iterations=n_iter)
        wv = weights * values
        jac = basis.T @ (wv[:, None] * psi)
        try:
            step = np.linalg.solve(jac, -resid)
        except np.linalg.LinAlgError:
            if converged:
                break
            raise ConvergenceError("Singular moment Jacobian", residual=norm / scale, iterations=n_iter)

        t = 1.0
        accepted = False
        while t >= _MIN_STEP:
            trial = theta + t * step
            if trial[-1] > 0.0:
                trial_values, trial_resid = _evaluate(trial)
                trial_norm = np.max(np.abs(trial_resid))
                if trial_norm < norm:
                    accepted = True
                    break
            if converged:
                break
            t *= 0.5

        if not accepted:
            # round-off floor of the moment sums
            floor = 64.0 * np.finfo(float).eps * np.max(np.abs(basis).T @ np.abs(wv))
            if converged or norm <= floor:
                break
            raise ConvergenceError("Maxwellian line search failed", residual=norm / scale, iterations=n_iter)

        theta, values, resid, norm = trial, trial_values, trial_resid, trial_norm
        n_iter += 1
        if converged:
            break
    return theta, values, n_iter, norm


def discrete_maxwellian(f_values, grid, tol=1e-12, max_newton=50, init=None, full_output=False):
    """
    Discrete Gaussian whose discrete mass, momentum and energy match those of f.

    Parameters
    ----------
    f_values: np.ndarray
        Distribution on the grid.
    grid: VelocityGrid
        Velocity grid.
    tol: float
        Tolerance on the moment residual, relative to the largest moment.
    max_newton: int
        Maximum number of Newton iterations.
    init: MaxwellianParams
        Warm start. Defaults to the continuous formulas applied to the
        discrete moments of f.
    full_output: boolean
        Also return the number of Newton iterations.

    Returns
    -------
    tuple
        (MaxwellianParams, sampled values[, iterations]).

    Notes
    -----
    When the sampled Maxwellian agrees with f to 1e-10 relative in every
    entry, f itself is returned as the Maxwellian, so that operators of the
    form M[f] - f vanish exactly on equilibrium states.
    """
    _check_values(f_values, grid)
    target = grid.basis.T @ (grid.weights * f_values)
    if not np.all(np.isfinite(target)) or not _admissible(target):
        raise NonPhysicalStateError("Moments admit no Maxwellian: rho = %r" % target[0])
    if init is None:
        m = moments(f_values, grid)
        init = params_from_moments(m.rho, m.U, m.T, grid.dim)
    theta, values, n_iter, _ = _newton_moments(target, grid, grid.weights, _to_vector(init), tol, max_newton)
    if np.allclose(values, f_values, rtol=_SNAP_RTOL, atol=0.0):
        values = f_values.copy()
    params = _from_vector(theta)
    if full_output:
        return params, values, n_iter
    return params, values


def weighted_maxwellian(target, grid, weights, init, tol=1e-12, max_newton=50):
    """
    Exponential-family values M with sum_k weights_k phi_k M_k = target.

    Parameters
    ----------
    target: np.ndarray
        Weighted moments, length d + 2.
    grid: VelocityGrid
        Velocity grid.
    weights: np.ndarray
        Non-negative quadrature weights, one per grid point.
    init: MaxwellianParams
        Starting coefficients.

    Returns
    -------
    tuple
        (MaxwellianParams, sampled values).
    """
    theta, values, _, _ = _newton_moments(np.asarray(target, dtype=float), grid, weights,
                                          _to_vector(init), tol, max_newton)
    return _from_vector(theta), values
