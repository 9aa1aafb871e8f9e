from .model import model
from .model import run_mg_solver
from ._transfer import restrict
from ._transfer import prolong
from ._transfer import coarse_rhs
from ._transfer import v_cycle
from ._transfer import MgHierarchy
from ._utils import MG_DEFAULTS

__ALL__ = [
    "model",
    "run_mg_solver",
    "restrict",
    "prolong",
    "coarse_rhs",
    "v_cycle",
    "MgHierarchy",
    "MG_DEFAULTS",
]
