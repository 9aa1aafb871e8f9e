"""Grid transfer and the FAS V-cycle.
"""
import numpy as np

from ..mesh import steady_operator, global_residual
from ..iterate import sgs_sweep
from ..utils import ConvergenceError, NonPhysicalStateError


def _restrict_values(values, dim):
    if any(n % 2 for n in values.shape[:dim]):
        raise ValueError("Cannot restrict odd cell counts %s." % (values.shape[:dim],))
    if dim == 1:
        n, nv = values.shape
        return values.reshape(n // 2, 2, nv).mean(axis=1)
    nx, ny, nv = values.shape
    # pairwise means keep restrict(prolong(u)) == u exactly
    return values.reshape(nx // 2, 2, ny // 2, 2, nv).mean(axis=3).mean(axis=1)


def _prolong_values(values, dim):
    for axis in range(dim):
        values = np.repeat(values, 2, axis=axis)
    return values


def restrict(field_h):
    """
    Average every pair (1D) or quartet (2D) of children into the parent cell.

    Parameters
    ----------
    field_h: DistributionField
        Fine field with even cell counts.

    Returns
    -------
    DistributionField
        Coarse field on the coarsened mesh.
    """
    mesh_H = field_h.mesh.coarsen()
    return field_h.with_values(_restrict_values(field_h.values, field_h.mesh.dim), mesh=mesh_H)


def prolong(field_H, mesh_h):
    """
    Piecewise-constant injection: children inherit the parent value.

    Parameters
    ----------
    field_H: DistributionField
        Coarse field.
    mesh_h: SpatialMesh
        Fine mesh, one level finer than field_H.mesh.

    Returns
    -------
    DistributionField
        Fine field.
    """
    if mesh_h.coarsen() != field_H.mesh:
        raise ValueError("Mesh %r is not one level finer than %r." % (mesh_h, field_H.mesh))
    return field_H.with_values(_prolong_values(field_H.values, mesh_h.dim), mesh=mesh_h)


def coarse_rhs(field_h, rhs_h, config):
    """
    Right-hand side of the coarse-grid equation.

    Parameters
    ----------
    field_h: DistributionField
        Smoothed fine iterate.
    rhs_h: np.ndarray
        Fine right-hand side, None for the finest level.
    config: dict
        Solver configuration.

    Returns
    -------
    np.ndarray
        r_H = R_H(I f_h) + I(r_h - R_h(f_h)).
    """
    dim = field_h.mesh.dim
    defect = -steady_operator(field_h, config)
    if rhs_h is not None:
        defect = defect + rhs_h
    return steady_operator(restrict(field_h), config) + _restrict_values(defect, dim)


class MgHierarchy(object):
    """Spatial meshes of a V-cycle, finest first"""
    def __init__(self, mesh, coarsest_cells):
        super(MgHierarchy, self).__init__()
        meshes = [mesh]
        while all(n % 2 == 0 and n // 2 >= coarsest_cells for n in meshes[-1].shape):
            meshes.append(meshes[-1].coarsen())
        self.meshes = meshes
        self.coarsest_cells = coarsest_cells

    @property
    def n_levels(self):
        return len(self.meshes)

    @property
    def coarsest_shape(self):
        return self.meshes[-1].shape

    def __repr__(self):
        return "MgHierarchy(%s)" % " -> ".join("x".join(str(n) for n in m.shape) for m in self.meshes)


def _smooth(field, rhs, config, n_iter, stats, report):
    for _ in range(n_iter):
        field = sgs_sweep(field, "forward", config, inner_solver="PFP", rhs=rhs, stats=stats)
        field = sgs_sweep(field, "backward", config, inner_solver="PFP", rhs=rhs, stats=stats)
        if report is not None:
            report.fine_sweeps += 2
    return field


def v_cycle(hierarchy, level, field, rhs, config, report=None, stats=None):
    """
    One FAS V-cycle from `level` down to the coarsest mesh.

    Parameters
    ----------
    hierarchy: MgHierarchy
        Mesh hierarchy.
    level: int
        Level of `field`, 0 being the finest.
    field: DistributionField
        Current iterate on that level.
    rhs: np.ndarray
        Right-hand side of the level equation, None on the finest level.
    config: dict
        Solver configuration with config["mg"] completed.
    report: IterationReport
        Receives the fine-level sweep count.
    stats: InnerStats
        Receives fine-level inner-iteration counts.

    Returns
    -------
    DistributionField
        Updated iterate.

    Notes
    -----
    A level whose residual meets the outer tolerance after pre-smoothing
    returns without visiting coarser levels. The coarsest level is smoothed
    until its residual reaches coarsest_factor times the outer tolerance.
    """
    mg = config["mg"]
    target = config["outer_tol"]
    fine = level == 0
    lvl_stats = stats if fine else None
    lvl_report = report if fine else None
    try:
        if level == hierarchy.n_levels - 1:
            for _ in range(mg["coarsest_max_iter"]):
                if global_residual(field, config, rhs) <= mg["coarsest_factor"] * target:
                    break
                field = _smooth(field, rhs, config, 1, lvl_stats, lvl_report)
            return field

        field = _smooth(field, rhs, config, mg["pre_smooth"], lvl_stats, lvl_report)
        if global_residual(field, config, rhs) <= target:
            return field
        coarse = restrict(field)
        rhs_H = coarse_rhs(field, rhs, config)
        corrected = v_cycle(hierarchy, level + 1, coarse.copy(), rhs_H, config, report, stats)
        field = field.with_values(field.values + _prolong_values(corrected.values - coarse.values, field.mesh.dim))
        return _smooth(field, rhs, config, mg["post_smooth"], lvl_stats, lvl_report)
    except (ConvergenceError, NonPhysicalStateError) as e:
        if getattr(e, "level", None) is None:
            e.level = level
        raise
