"""Case runs, convergence studies and benchmarks.
"""
import copy
import json
import os

import numpy as np
import pandas as pd

from .. import iterate, multigrid
from ..cases import build_case, case_stats
from ..mesh import moments_df, save_moments_csv
from ..utils import ConvergenceError, NonPhysicalStateError, l2_error, fit_slope

STATUS_CODES = {"converged": 0, "max_iter": 1, "failed": 2}
BENCH_COLUMNS = ["case", "method", "eps", "order", "status", "iterations", "residual",
                 "fine_sweeps", "avg_inner", "fallbacks", "elapsed_seconds"]
STUDY_COLUMNS = ["N", "h", "err_rho", "err_T"]
STUDY_TOL = 1e-9


def _driver(config):
    if config["method"] == "MG-SGS-PFP":
        return multigrid.model(config)
    return iterate.model(config)


def _json_ready(obj):
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def solve_case(case, silent=True):
    """
    Solve a case without writing anything.

    Returns
    -------
    tuple
        (solver, error or None). solver.field is the last accepted iterate
        and solver.report its history.
    """
    config, field = build_case(case)
    solver = _driver(config)
    try:
        solver.solve(field, silent=silent)
        return solver, None
    except (ConvergenceError, NonPhysicalStateError) as e:
        if solver.report is None:
            raise
        return solver, e


def run_case(case, silent=True):
    """
    Solve a case and write its artifacts to case["out"].

    Parameters
    ----------
    case: dict
        Checked case configuration.
    silent: boolean
        Suppress per-iteration printing.

    Returns
    -------
    tuple
        (exit status, summary dict). Status 0 means converged, 1 that the
        outer iteration budget ran out, 2 that the solver failed.

    Notes
    -----
    Writes moments.csv, history.csv and summary.json. On failure the
    moments of the last accepted iterate and the partial history are
    still written.
    """
    out = case["out"]
    os.makedirs(out, exist_ok=True)
    if not silent:
        case_stats(case)
    solver, error = solve_case(case, silent=silent)
    report = solver.report

    save_moments_csv(solver.field, os.path.join(out, "moments.csv"))
    solver.save_history(os.path.join(out, "history.csv"))
    summary = report.summary()
    summary["case"] = case["case"]
    summary["parameters"] = {k: case[k] for k in ("eps", "N", "K", "L", "order", "outer_tol",
                                                  "inner_tol", "tau", "mass", "full_scale")}
    summary["error"] = None if error is None else str(error)
    with open(os.path.join(out, "summary.json"), "w") as f:
        json.dump(_json_ready(summary), f, indent=2)
    print("# %s %s: %s after %d iterations, residual %.3e"
          % (case["case"], report.method, report.status, report.n_iter, report.final_residual))
    return STATUS_CODES[report.status], summary


def _block_mean(values, ratio):
    shape = []
    for n in values.shape:
        shape += [n // ratio, ratio]
    out = values.reshape(shape)
    for axis in range(values.ndim - 1, -1, -1):
        out = out.mean(axis=2 * axis + 1)
    return out


def _moment_arrays(field):
    df = moments_df(field)
    shape = field.mesh.shape
    return df["rho"].values.reshape(shape), df["T"].values.reshape(shape)


def convergence_study(case, grids, ref_N, silent=True):
    """
    Measure L2 errors of density and temperature against a fine reference.

    Parameters
    ----------
    case: dict
        Checked case configuration; its order and method are used on the
        study grids.
    grids: list of int
        Cells per axis of the study meshes.
    ref_N: int
        Cells per axis of the reference mesh, solved with the second-order
        scheme and multigrid.
    silent: boolean
        Suppress per-iteration printing.

    Returns
    -------
    tuple
        (pandas.DataFrame with columns N, h, err_rho, err_T,
         dict of fitted slopes {'rho': ..., 'T': ...}).

    Notes
    -----
    Every run is iterated to a residual of STUDY_TOL with the inner
    tolerance at most a hundredth of it. The reference is solved with
    MG-SGS-PFP and reused for a study grid of the same size and order.
    Reference moments are averaged over the children of each study cell.
    """
    grids = sorted(int(N) for N in grids)
    for N in grids:
        ratio = ref_N // N
        if N < 1 or ref_N % N != 0 or ratio & (ratio - 1):
            raise ValueError("Grid N=%d is not nested in the reference N=%d." % (N, ref_N))

    def _solve(N, order, method):
        c = copy.deepcopy(case)
        c.update({"N": N, "order": order, "method": method, "outer_tol": STUDY_TOL,
                  "inner_tol": min(c["inner_tol"], 1e-2 * STUDY_TOL)})
        solver, error = solve_case(c, silent=silent)
        report = solver.report
        if error is not None or not report.converged:
            raise ConvergenceError("Study run N=%d did not converge" % N,
                                   residual=report.final_residual, iterations=report.n_iter)
        return solver.field

    reference = _solve(ref_N, 2, "MG-SGS-PFP")
    ref_rho, ref_T = _moment_arrays(reference)
    rows = []
    for N in grids:
        if N == ref_N and case["order"] == 2:
            field = reference
        else:
            field = _solve(N, case["order"], case["method"])
        rho, T = _moment_arrays(field)
        ratio = ref_N // N
        rows.append([N, field.mesh.h[0],
                     l2_error(rho, _block_mean(ref_rho, ratio), field.mesh.cell_volume),
                     l2_error(T, _block_mean(ref_T, ratio), field.mesh.cell_volume)])
        if not silent:
            print("N = %d: err(rho) = %.4e, err(T) = %.4e" % tuple(rows[-1][:1] + rows[-1][2:]))
    table = pd.DataFrame(rows, columns=STUDY_COLUMNS)
    slopes = {}
    for name in ("rho", "T"):
        err = table["err_" + name].values
        slopes[name] = fit_slope(table["h"].values, err) if len(grids) > 1 and np.all(err > 0) else float("nan")
    return table, slopes


def run_study(case, grids, ref_N, silent=True):
    """Run `convergence_study` and write study.csv and study.json to case["out"]."""
    out = case["out"]
    os.makedirs(out, exist_ok=True)
    table, slopes = convergence_study(case, grids, ref_N, silent=silent)
    table.to_csv(os.path.join(out, "study.csv"), index=False)
    with open(os.path.join(out, "study.json"), "w") as f:
        json.dump({"case": case["case"], "order": case["order"], "eps": case["eps"],
                   "ref_N": ref_N, "slopes": slopes}, f, indent=2)
    for name, s in slopes.items():
        print("# Fitted slope of err(%s): %.3f" % (name, s))
    return table, slopes


def bench(cases, out, silent=True):
    """
    Run every case of a benchmark matrix.

    Parameters
    ----------
    cases: list of dict
        Case configurations, e.g. from `expand_matrix`.
    out: str
        Directory receiving bench.csv and one subdirectory per run.

    Returns
    -------
    pandas.DataFrame
        One row per run with columns case, method, eps, order, status,
        iterations, residual, fine_sweeps, avg_inner, fallbacks,
        elapsed_seconds.
    """
    os.makedirs(out, exist_ok=True)
    rows = []
    for index, case in enumerate(cases):
        case = dict(case)
        case["out"] = os.path.join(out, "run%03d_%s_%s_eps%g_o%d"
                                   % (index, case["case"], case["method"], case["eps"], case["order"]))
        _, summary = run_case(case, silent=silent)
        history = pd.read_csv(os.path.join(case["out"], "history.csv"))
        rows.append([case["case"], case["method"], case["eps"], case["order"], summary["status"],
                     summary["iterations"], summary["final_residual"], summary["fine_sweeps"],
                     float(history["avg_inner"].mean()) if len(history) else 0.0,
                     summary["fallbacks"], summary["elapsed_seconds"]])
    table = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    table.to_csv(os.path.join(out, "bench.csv"), index=False)
    return table
