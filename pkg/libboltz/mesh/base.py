"""Moment-field tables.
"""
import numpy as np
import pandas as pd

from ..velocity import moments, heat_flux

AXIS_NAMES = ("x", "y")


def moments_df(field):
    """
    Macroscopic quantities of every cell.

    Parameters
    ----------
    field: DistributionField
        Field to summarize.

    Returns
    -------
    pandas.DataFrame
        One row per cell in lexicographic order with columns
        x[, y], rho, U1..Ud, T, q1..qd.
    """
    mesh, grid = field.mesh, field.grid
    centers = [mesh.centers(a) for a in range(mesh.dim)]
    rows = []
    for cell in mesh.cells():
        m = moments(field.values[cell], grid)
        q = heat_flux(field.values[cell], grid, m.U)
        row = [centers[a][cell[a]] for a in range(mesh.dim)]
        row += [m.rho] + list(m.U) + [m.T] + list(q)
        rows.append(row)
    columns = list(AXIS_NAMES[:mesh.dim]) + ["rho"]
    columns += ["U%d" % (i + 1) for i in range(grid.dim)] + ["T"]
    columns += ["q%d" % (i + 1) for i in range(grid.dim)]
    return pd.DataFrame(np.array(rows), columns=columns)


def save_moments_csv(field, path):
    """Write `moments_df(field)` to a CSV file with a header line."""
    df = moments_df(field)
    df.to_csv(path, index=False)
    return df
