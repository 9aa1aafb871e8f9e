from .model import model
from .model import run_solver
from ._sweep import sgs_sweep
from ._sweep import source_iteration_step
from ._utils import IterationReport
from ._utils import InnerStats
from ._utils import METHODS

__ALL__ = [
    "model",
    "run_solver",
    "sgs_sweep",
    "source_iteration_step",
    "IterationReport",
    "InnerStats",
    "METHODS",
]
