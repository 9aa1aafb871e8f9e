"""Source iteration and symmetric Gauss-Seidel scans.
"""
import itertools

import numpy as np

from ..velocity import moments, discrete_maxwellian
from ..collision import collision_frequency, penalty_remainder
from ..mesh import compute_slopes, build_stencil
from ..cell_solver import assemble_cell_problem, fp_solve, pfp_solve
from ..utils import map_cells, ConvergenceError, NonPhysicalStateError
from ._utils import InnerStats

INNER_SOLVERS = ("FP", "PFP")


def _explicit_terms(field, config):
    """Collision frequencies and (binary) penalty remainders of the pre-scan state."""
    grid = field.grid
    values = field.values
    model = config["collision"]
    tol = config["newton_tol"]
    cells = field.mesh.cells()

    def _cell(c):
        try:
            nu = collision_frequency(moments(values[c], grid), model)
            if not model.is_binary:
                return nu, None
            return nu, penalty_remainder(values[c], nu, grid, model.operator, tol=tol)
        except NonPhysicalStateError as e:
            raise NonPhysicalStateError(str(e), cell=c)

    terms = map_cells(_cell, cells, config["threads"])
    nus = np.empty(field.mesh.shape)
    penalties = np.empty_like(values) if model.is_binary else None
    for c, (nu, p) in zip(cells, terms):
        nus[c] = nu
        if penalties is not None:
            penalties[c] = p
    return nus, penalties


def _warm_start(problem, g, shift):
    """Pre-scan value, or that value plus the last correction of the scan when it fits the cell better."""
    trial = g + shift
    if not np.any(shift) or np.any(trial <= 0.0):
        return g
    try:
        if problem.residual(trial, problem.maxwellian(trial)[1]) < problem.residual(g, problem.maxwellian(g)[1]):
            return trial
    except (ConvergenceError, NonPhysicalStateError):
        pass
    return g


def sgs_sweep(field, direction, config, inner_solver="PFP", rhs=None, stats=None):
    """
    One Gauss-Seidel scan over the cells.

    Parameters
    ----------
    field: DistributionField
        Pre-scan state.
    direction: str
        'forward' (lexicographic) or 'backward' (reverse order).
    config: dict
        Checked solver configuration.
    inner_solver: str
        'PFP' or 'FP'.
    rhs: np.ndarray
        Right-hand side of a coarse-level equation, field-shaped.
    stats: InnerStats
        Counters updated with every cell solve.

    Returns
    -------
    DistributionField
        Post-scan state. Slopes, collision frequencies and penalty terms are
        frozen at the pre-scan state.

    Notes
    -----
    Each cell solve starts from the pre-scan cell value, shifted by the
    correction of the previously visited cell when that lowers the cell
    residual.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward', got %r." % (direction,))
    if inner_solver not in INNER_SOLVERS:
        raise ValueError("inner_solver must be one of %s, got %r." % (INNER_SOLVERS, inner_solver))
    if stats is None:
        stats = InnerStats()
    values = field.values.copy()
    slopes = compute_slopes(field)
    stencil = build_stencil(field, config)
    nus, penalties = _explicit_terms(field, config)
    eps = config["eps"]
    tol, max_inner = config["inner_tol"], config["max_inner"]
    shift = None

    for cell in field.mesh.cells(reverse=(direction == "backward")):
        problem = assemble_cell_problem(
            cell, values, slopes, stencil, nus[cell], eps,
            penalty=None if penalties is None else penalties[cell],
            rhs=None if rhs is None else rhs[cell],
            newton_tol=config["newton_tol"], max_newton=config["max_newton"])
        try:
            g0 = values[cell] if shift is None else _warm_start(problem, values[cell], shift)
            if inner_solver == "PFP":
                g, n_iter, fallback = pfp_solve(problem, g0, tol=tol, max_iter=max_inner, tau=config["tau"])
            else:
                g, n_iter = fp_solve(problem, g0, tol=tol, max_iter=max_inner)
                fallback = False
        except ConvergenceError as e:
            raise ConvergenceError("Inner %s solve failed" % inner_solver, residual=e.residual,
                                   iterations=e.iterations, cell=cell)
        except NonPhysicalStateError as e:
            raise NonPhysicalStateError(str(e), cell=cell)
        shift = g - values[cell]
        values[cell] = g
        stats.record(n_iter, fallback)
    return field.with_values(values)


def source_iteration_step(field, config):
    """
    One source iteration of the first-order BGK scheme.

    Parameters
    ----------
    field: DistributionField
        Current iterate.
    config: dict
        Checked solver configuration.

    Returns
    -------
    DistributionField
        Solution of the linear transport problem with M and nu frozen at the
        current iterate and wall emission evaluated from it.

    Notes
    -----
    Velocities are grouped by the sign pattern of their spatial components;
    each group is swept in its upwind order, which solves the
    lower-triangular system exactly.
    """
    if config["collision"].is_binary or field.order != 1:
        raise ValueError("Source iteration is available for the first-order BGK scheme only.")
    mesh, grid = field.mesh, field.grid
    values = field.values
    stencil = build_stencil(field, config)
    eps = config["eps"]

    kappa = np.empty(mesh.shape)
    equilibrium = np.empty_like(values)
    for cell in mesh.cells():
        m = moments(values[cell], grid)
        kappa[cell] = collision_frequency(m, config["collision"]) / eps
        _, equilibrium[cell] = discrete_maxwellian(values[cell], grid, tol=config["newton_tol"],
                                                   max_newton=config["max_newton"])
    ghosts = {}
    for axis in range(mesh.dim):
        n = mesh.shape[axis]
        ghosts[(axis, "lo")] = stencil.closures[(axis, "lo")].merged(np.take(values, 0, axis=axis))
        ghosts[(axis, "hi")] = stencil.closures[(axis, "hi")].merged(np.take(values, n - 1, axis=axis))

    new = np.empty_like(values)
    for signs in itertools.product((1, -1), repeat=mesh.dim):
        mask = np.ones(grid.size, dtype=bool)
        for axis, sign in enumerate(signs):
            v = stencil.velocity[axis]
            mask &= (v >= 0.0) if sign > 0 else (v < 0.0)
        if not np.any(mask):
            continue
        a = stencil.a[mask]
        ranges = [range(n) if sign > 0 else range(n - 1, -1, -1) for n, sign in zip(mesh.shape, signs)]
        for cell in itertools.product(*ranges):
            rhs = kappa[cell] * equilibrium[cell][mask]
            for axis, sign in enumerate(signs):
                i = cell[axis]
                upstream = i - sign
                if 0 <= upstream < mesh.shape[axis]:
                    inflow = new[cell[:axis] + (upstream,) + cell[axis + 1:]][mask]
                else:
                    side = "lo" if sign > 0 else "hi"
                    inflow = ghosts[(axis, side)][cell[:axis] + cell[axis + 1:]][mask]
                rhs += np.abs(stencil.velocity[axis][mask]) * inflow / mesh.h[axis]
            new[cell][mask] = rhs / (a + kappa[cell])
    return field.with_values(new)
