import copy
from collections import OrderedDict

from ..collision import default_truncation
from .base import case_stats
from .base import check_case
from .base import build_case
from .base import WALL_FACES

__ALL__ = [
    "case_stats",
    "check_case",
    "build_case",
    "load_heat1d1v",
    "load_cavity2d3v",
    "load_plates1d2v",
    "load_lid2d2v",
    "load_case",
    "CASES",
    "WALL_FACES",
]

_SOLVER_DEFAULTS = {
    "order": 1,
    "method": "SGS-PFP",
    "outer_tol": 1e-5,
    "inner_tol": 1e-8,
    "max_outer": 10000,
    "max_inner": 500,
    "tau": 0.0,
    "mass": None,
    "threads": None,
    "out": "output",
}


def _case(name, dim_x, dim_v, eps, N, K, L, centering, collision, walls, full_scale, overrides):
    case = dict(_SOLVER_DEFAULTS)
    case.update({
        "case": name,
        "dim_x": dim_x,
        "dim_v": dim_v,
        "eps": eps,
        "N": N,
        "K": K,
        "L": L,
        "centering": centering,
        "full_scale": full_scale,
        "collision": collision,
        "spectral": {"R": 3.0, "n_radial": 32, "n_angle": 32, "cache": None},
        "walls": walls,
        "mg": {},
    })
    for k, v in overrides.items():
        if k not in case:
            raise ValueError("Unknown case field %r." % (k,))
        case[k] = copy.deepcopy(v)
    return check_case(case)


def load_heat1d1v(eps=1.0, full_scale=False, **overrides):
    """
    Heat transfer between two walls, BGK with constant frequency.

    Notes
    -----
    x in (-1/2, 1/2), walls at rest with T = 1 (left) and T = 2 (right).

    # Phase space: 1D1V
    # Spatial cells: 256
    # Velocity points: 50 on [-6, 6], cell-centered
    # Collision: BGK, nu = 1

    Desk and full scale coincide.
    """
    walls = OrderedDict([("left", {"T": 1.0, "U": None}), ("right", {"T": 2.0, "U": None})])
    collision = {"variant": "BGK", "frequency": "constant", "nu0": 1.0}
    return _case("heat1d1v", 1, 1, eps, 256, 50, 6.0, "cell", collision, walls, full_scale, overrides)


def load_cavity2d3v(eps=1.0, full_scale=False, **overrides):
    """
    Heat transfer in a square cavity, BGK with nu = 4 pi rho.

    Notes
    -----
    Unit square centred at the origin, all walls at rest, top wall T = 2,
    the others T = 1.

    # Phase space: 2D3V
    # Spatial cells: 20 x 20 (full scale 40 x 40)
    # Velocity points: 12^3 (full scale 20^3) on [-6, 6]^3, cell-centered
    """
    N, K = (40, 20) if full_scale else (20, 12)
    walls = OrderedDict([(name, {"T": 2.0 if name == "top" else 1.0, "U": None})
                         for name in ("left", "right", "bottom", "top")])
    collision = {"variant": "BGK", "frequency": "4pi_rho", "nu0": 1.0}
    return _case("cavity2d3v", 2, 3, eps, N, K, 6.0, "cell", collision, walls, full_scale, overrides)


def load_plates1d2v(eps=1.0, full_scale=False, **overrides):
    """
    Heat transfer between parallel plates with binary collisions of
    Maxwell molecules, penalized with nu = 2 pi rho.

    Notes
    -----
    Walls at rest with T = 1 (left) and T = 2 (right).

    # Phase space: 1D2V
    # Spatial cells: 64 (full scale 128)
    # Velocity points: 32 x 32, node-periodic, R = 3, L = (3 sqrt 2 + 1) / 2 R
    """
    N = 128 if full_scale else 64
    walls = OrderedDict([("left", {"T": 1.0, "U": None}), ("right", {"T": 2.0, "U": None})])
    collision = {"variant": "Binary", "frequency": "2pi_rho", "nu0": 1.0}
    return _case("plates1d2v", 1, 2, eps, N, 32, default_truncation(3.0), "node",
                 collision, walls, full_scale, overrides)


def load_lid2d2v(eps=1.0, full_scale=False, **overrides):
    """
    Lid-driven cavity with binary collisions, penalized with nu = 2 pi rho.

    Notes
    -----
    All walls have T = 1; the top wall moves with U = (1, 0).

    # Phase space: 2D2V
    # Spatial cells: 20 x 20 (full scale 40 x 40)
    # Velocity points: 16 x 16 (full scale 32 x 32), node-periodic, R = 3
    """
    N, K = (40, 32) if full_scale else (20, 16)
    walls = OrderedDict([(name, {"T": 1.0, "U": [1.0, 0.0] if name == "top" else None})
                         for name in ("left", "right", "bottom", "top")])
    collision = {"variant": "Binary", "frequency": "2pi_rho", "nu0": 1.0}
    return _case("lid2d2v", 2, 2, eps, N, K, default_truncation(3.0), "node",
                 collision, walls, full_scale, overrides)


CASES = OrderedDict([
    ("heat1d1v", load_heat1d1v),
    ("cavity2d3v", load_cavity2d3v),
    ("plates1d2v", load_plates1d2v),
    ("lid2d2v", load_lid2d2v),
])


def load_case(name, eps=1.0, full_scale=False, **overrides):
    """
    Load a registered case by name.

    Parameters
    ----------
    name: str
        One of 'heat1d1v', 'cavity2d3v', 'plates1d2v', 'lid2d2v'.
    eps: float
        Knudsen number.
    full_scale: boolean
        Use the full grid sizes instead of the desk-scale defaults.
    overrides: dict
        Replacement values for case fields.

    Returns
    -------
    dict
        Checked case configuration.
    """
    if name not in CASES:
        raise ValueError("Unknown case %r, choose from %s." % (name, list(CASES)))
    return CASES[name](eps=eps, full_scale=full_scale, **overrides)
