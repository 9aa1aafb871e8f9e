import numpy as np
import pandas as pd

from ..collision import CollisionModel
from ..mesh import WallSpec
from ..utils import default_threads

METHODS = ("SI", "SGS-FP", "SGS-PFP", "MG-SGS-PFP")
HISTORY_COLUMNS = ["iter", "residual", "avg_inner", "max_inner", "fallbacks", "elapsed_seconds"]


def _check_config(config):
    """
    Check solver configuration and complete it with default_config.

    Parameters
    ----------
    config: dict
        Solver settings. 'walls' (list of WallSpec) and 'collision'
        (CollisionModel) are required; other keys default to:
        config = {
            "eps": 1.0,
            "order": 1,
            "method": "SGS-PFP",
            "outer_tol": 1e-5,
            "inner_tol": 1e-8,
            "max_outer": 10000,
            "max_inner": 500,
            "tau": 0.0,
            "newton_tol": 1e-12,
            "max_newton": 50,
            "mass": None,
            "threads": None
        }
        A missing mass means |Omega|; missing threads are read from the
        environment.

    Returns
    -------
    dict
        The same, completed dictionary.
    """
    default_config = {
        "eps": 1.0,
        "order": 1,
        "method": "SGS-PFP",
        "outer_tol": 1e-5,
        "inner_tol": 1e-8,
        "max_outer": 10000,
        "max_inner": 500,
        "tau": 0.0,
        "newton_tol": 1e-12,
        "max_newton": 50,
        "mass": None,
        "threads": None
    }
    for k in default_config.keys():
        if k not in config:
            config[k] = default_config[k]
    if config["threads"] is None:
        config["threads"] = default_threads()

    if "walls" not in config or "collision" not in config:
        raise ValueError("Solver configuration needs 'walls' and 'collision'.")
    if not all(isinstance(w, WallSpec) for w in config["walls"]):
        raise TypeError("config['walls'] must be a list of WallSpec.")
    if not isinstance(config["collision"], CollisionModel):
        raise TypeError("config['collision'] must be a CollisionModel.")
    for k in ("eps", "outer_tol", "inner_tol", "newton_tol"):
        if not config[k] > 0:
            raise ValueError("%s must be positive, got %r." % (k, config[k]))
    for k in ("max_outer", "max_inner", "max_newton", "threads"):
        if int(config[k]) != config[k] or config[k] < 1:
            raise ValueError("%s must be a positive integer, got %r." % (k, config[k]))
    if config["order"] not in (1, 2):
        raise ValueError("order must be 1 or 2, got %r." % (config["order"],))
    if config["method"] not in METHODS:
        raise ValueError("method must be one of %s, got %r." % (METHODS, config["method"]))
    if config["method"] == "SI" and (config["order"] != 1 or config["collision"].is_binary):
        raise ValueError("Source iteration is available for the first-order BGK scheme only.")
    if config["tau"] != 0 and not config["tau"] >= 1:
        raise ValueError("tau must be 0 (off) or >= 1, got %r." % (config["tau"],))
    if config["mass"] is not None and not config["mass"] > 0:
        raise ValueError("mass must be positive, got %r." % (config["mass"],))
    return config


class InnerStats(object):
    """Inner-iteration counters of one outer iteration"""
    def __init__(self):
        self.total = 0
        self.max = 0
        self.fallbacks = 0
        self.visits = 0

    def record(self, n_iter, fallback):
        self.total += n_iter
        self.max = max(self.max, n_iter)
        self.fallbacks += int(fallback)
        self.visits += 1

    @property
    def average(self):
        """Total inner iterations per cell visit (twice the cell count per SGS iteration)."""
        return self.total / self.visits if self.visits else 0.0


class IterationReport(object):
    """History of an outer iteration"""
    def __init__(self, method):
        super(IterationReport, self).__init__()
        self.method = method
        self.residuals = []
        self.avg_inner = []
        self.max_inner = []
        self.fallbacks = []
        self.elapsed = []
        self.masses = []
        self.fine_sweeps = 0
        self.status = "running"

    def append(self, residual, stats, elapsed, mass):
        self.residuals.append(residual)
        self.avg_inner.append(stats.average)
        self.max_inner.append(stats.max)
        self.fallbacks.append(stats.fallbacks)
        self.elapsed.append(elapsed)
        self.masses.append(mass)

    @property
    def n_iter(self):
        return len(self.residuals)

    @property
    def final_residual(self):
        return self.residuals[-1] if self.residuals else float("nan")

    @property
    def converged(self):
        return self.status == "converged"

    def to_frame(self):
        """
        Residual history as a DataFrame.

        Returns
        -------
        pandas.DataFrame
            Columns iter, residual, avg_inner, max_inner, fallbacks, elapsed_seconds.
        """
        return pd.DataFrame({
            "iter": np.arange(1, self.n_iter + 1),
            "residual": self.residuals,
            "avg_inner": self.avg_inner,
            "max_inner": self.max_inner,
            "fallbacks": self.fallbacks,
            "elapsed_seconds": self.elapsed,
        }, columns=HISTORY_COLUMNS)

    def save_csv(self, path):
        self.to_frame().to_csv(path, index=False)

    def summary(self):
        return {
            "method": self.method,
            "status": self.status,
            "iterations": self.n_iter,
            "final_residual": self.final_residual,
            "fine_sweeps": self.fine_sweeps,
            "fallbacks": int(np.sum(self.fallbacks)),
            "elapsed_seconds": self.elapsed[-1] if self.elapsed else 0.0,
        }
