import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV = "LIBBOLTZ_THREADS"


class NonPhysicalStateError(ValueError):
    """Raised when a distribution has no admissible moments (rho <= 0, T <= 0,
    or no outgoing flux at a wall)."""
    def __init__(self, message, cell=None):
        if cell is not None:
            message = "%s (cell %s)" % (message, cell)
        super(NonPhysicalStateError, self).__init__(message)
        self.cell = cell


class ExistenceError(NonPhysicalStateError):
    """Raised when a moment defect admits no weighted Maxwellian."""
    pass


class ConvergenceError(RuntimeError):
    """Raised when an iteration exhausts its budget."""
    def __init__(self, message, residual=None, iterations=None, cell=None, level=None):
        if residual is not None:
            message = "%s, last residual %.3e" % (message, residual)
        if cell is not None:
            message = "%s (cell %s)" % (message, cell)
        if level is not None:
            message = "%s (level %d)" % (message, level)
        super(ConvergenceError, self).__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.cell = cell
        self.level = level


def _check_ndarray(arr):
    if not isinstance(arr, np.ndarray):
        raise TypeError("Type of arguement only supports for numpy.ndarray.")


def default_threads():
    """
    Number of worker threads for explicit phases, read from `LIBBOLTZ_THREADS`.
    """
    value = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(value)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (THREADS_ENV, value))
    if n < 1:
        raise ValueError("%s must be positive, got %d" % (THREADS_ENV, n))
    return n


def map_cells(func, items, threads=1):
    """
    Apply `func` to every item, optionally on a thread pool.

    Parameters
    ----------
    func: callable
        Pure function of a single item.
    items: iterable
        Items to evaluate, typically cell indices.
    threads: int
        Worker count. With 1 the map runs in the calling thread.

    Returns
    -------
    list
        Results in the order of `items`.
    """
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def l2_error(values, reference, cell_volume):
    """
    Discrete L2 error sqrt(V * sum (m - m_ref)^2) of a cell-wise quantity.

    Parameters
    ----------
    values, reference: np.ndarray
        Cell averages on the same mesh.
    cell_volume: float
        Cell size (length in 1D, area in 2D).

    Returns
    -------
    float
        L2 error.
    """
    _check_ndarray(values)
    _check_ndarray(reference)
    if values.shape != reference.shape:
        raise ValueError("Shapes of values and reference differ: %s vs %s" % (values.shape, reference.shape))
    return float(np.sqrt(cell_volume * np.sum((values - reference) ** 2)))


def fit_slope(h, err):
    """
    Least-squares slope of log(err) against log(h).

    Parameters
    ----------
    h: array_like
        Mesh sizes.
    err: array_like
        Errors measured on those meshes, all positive.

    Returns
    -------
    float
        Observed order of convergence.
    """
    h = np.asarray(h, dtype=float)
    err = np.asarray(err, dtype=float)
    if len(h) < 2:
        raise ValueError("At least two grids are needed to fit a slope.")
    if np.any(err <= 0.0):
        raise ValueError("Errors must be positive to fit a log-log slope.")
    slope, _ = np.polyfit(np.log(h), np.log(err), 1)
    return float(slope)
