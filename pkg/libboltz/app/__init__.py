from .config import parse_config
from .config import expand_matrix
from .config import ConfigError
from .runner import solve_case
from .runner import run_case
from .runner import convergence_study
from .runner import run_study
from .runner import bench
from .cli import main

__ALL__ = [
    "parse_config",
    "expand_matrix",
    "ConfigError",
    "solve_case",
    "run_case",
    "convergence_study",
    "run_study",
    "bench",
    "main",
]
