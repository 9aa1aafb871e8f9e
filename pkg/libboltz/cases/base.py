"""Case preview and construction module.
"""
import os

import numpy as np

from ..velocity import build_velocity_grid
from ..collision import CollisionModel, build_spectral_operator
from ..collision import save_spectral_operator, load_spectral_operator
from ..mesh import SpatialMesh, WallSpec, equilibrium_field

BOX = (-0.5, 0.5)
# wall name -> (mesh axis, outward sign)
WALL_FACES = {
    1: {"left": (0, -1), "right": (0, 1)},
    2: {"left": (0, -1), "right": (0, 1), "bottom": (1, -1), "top": (1, 1)},
}


def check_case(case):
    """
    Check the consistency of a case configuration.

    Parameters
    ----------
    case: dict
        Case configuration as returned by the `load_*` functions.

    Notes
    -----
    Raises ValueError naming the offending field.
    """
    dim_x, dim_v = case["dim_x"], case["dim_v"]
    if dim_x not in (1, 2) or dim_v not in (1, 2, 3) or dim_v < dim_x:
        raise ValueError("dim_x/dim_v: unsupported phase space %dD%dV." % (dim_x, dim_v))
    for k in ("N", "K"):
        if int(case[k]) != case[k] or case[k] < 1:
            raise ValueError("%s: must be a positive integer, got %r." % (k, case[k]))
    for k in ("eps", "L", "outer_tol", "inner_tol"):
        if not case[k] > 0:
            raise ValueError("%s: must be positive, got %r." % (k, case[k]))
    if case["order"] not in (1, 2):
        raise ValueError("order: must be 1 or 2, got %r." % (case["order"],))
    if case["mass"] is not None and not case["mass"] > 0:
        raise ValueError("mass: must be positive, got %r." % (case["mass"],))
    walls = case["walls"]
    if sorted(walls) != sorted(WALL_FACES[dim_x]):
        raise ValueError("walls: a %dD case needs walls %s, got %s." % (dim_x, sorted(WALL_FACES[dim_x]), sorted(walls)))
    for name, spec in walls.items():
        if not spec["T"] > 0:
            raise ValueError("walls.%s.T: must be positive, got %r." % (name, spec["T"]))
        U = spec.get("U")
        if U is not None:
            if len(U) > dim_v:
                raise ValueError("walls.%s.U: has %d components for a %dV case." % (name, len(U), dim_v))
            axis, _ = WALL_FACES[dim_x][name]
            if axis < len(U) and U[axis] != 0.0:
                raise ValueError("walls.%s.U: must be tangential to the wall." % name)
    if case["collision"]["variant"] == "Binary":
        if dim_v != 2:
            raise ValueError("collision: binary collisions need a 2D velocity grid, got %dV." % dim_v)
        if case["centering"] != "node" or case["K"] % 2:
            raise ValueError("K: binary collisions need an even node-periodic grid.")
    return case


def case_stats(case):
    """
    Print the parameters of a case to stdout.

    Parameters
    ----------
    case: dict
        Case configuration to watch.
    """
    print("--------------- Case Statistics ---------------")
    print("# Case:", case["case"], "(full scale)" if case["full_scale"] else "(desk scale)")
    print("# Phase space: %dD%dV" % (case["dim_x"], case["dim_v"]))
    print("# Spatial cells: %s" % " x ".join([str(case["N"])] * case["dim_x"]))
    print("# Velocity points: %s on [-%g, %g]^%d (%s)"
          % (" x ".join([str(case["K"])] * case["dim_v"]), case["L"], case["L"], case["dim_v"], case["centering"]))
    coll = case["collision"]
    print("# Collision: %s, frequency %s" % (coll["variant"], coll["frequency"]))
    print("# Knudsen number: %g" % case["eps"])
    print("# Scheme order: %d, method: %s" % (case["order"], case["method"]))
    for name, spec in case["walls"].items():
        U = spec.get("U")
        print("# Wall %s: T = %g%s" % (name, spec["T"], "" if U is None else ", U = %s" % list(U)))
    print("")


def _wall_specs(case):
    dim_v = case["dim_v"]
    walls = []
    for name, spec in case["walls"].items():
        axis, sign = WALL_FACES[case["dim_x"]][name]
        normal = np.zeros(dim_v)
        normal[axis] = sign
        velocity = np.zeros(dim_v)
        if spec.get("U") is not None:
            velocity[:len(spec["U"])] = spec["U"]
        walls.append(WallSpec(spec["T"], normal, velocity=velocity, name=name))
    return walls


def _collision_model(case, grid):
    coll = case["collision"]
    if coll["variant"] != "Binary":
        return CollisionModel("BGK", frequency=coll["frequency"], nu0=coll["nu0"])
    spectral = case["spectral"]
    cache = spectral.get("cache")
    if cache and os.path.exists(cache):
        op = load_spectral_operator(cache, grid)
    else:
        op = build_spectral_operator(grid, R=spectral["R"], n_radial=spectral["n_radial"],
                                     n_angle=spectral["n_angle"])
        if cache:
            save_spectral_operator(op, cache)
    return CollisionModel("Binary", frequency=coll["frequency"], operator=op)


def build_case(case):
    """
    Build the solver configuration and the initial field of a case.

    Parameters
    ----------
    case: dict
        Checked case configuration.

    Returns
    -------
    tuple
        (solver config dict, DistributionField). The initial field is the
        uniform equilibrium at rest whose temperature is the mean wall
        temperature and whose total mass is the configured mass.
    """
    check_case(case)
    grid = build_velocity_grid(case["dim_v"], case["K"], case["L"], centering=case["centering"])
    mesh = SpatialMesh([BOX] * case["dim_x"], (case["N"],) * case["dim_x"])
    walls = _wall_specs(case)
    config = {
        "walls": walls,
        "collision": _collision_model(case, grid),
        "eps": case["eps"],
        "order": case["order"],
        "method": case["method"],
        "outer_tol": case["outer_tol"],
        "inner_tol": case["inner_tol"],
        "max_outer": case["max_outer"],
        "max_inner": case["max_inner"],
        "tau": case["tau"],
        "mass": case["mass"],
        "threads": case["threads"],
        "mg": dict(case["mg"]),
    }
    T0 = float(np.mean([w.temperature for w in walls]))
    C = case["mass"] if case["mass"] is not None else mesh.domain_volume
    return config, equilibrium_field(mesh, grid, T0, C, order=case["order"])
