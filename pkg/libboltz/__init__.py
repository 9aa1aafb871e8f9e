from .iterate import model as SGS
from .multigrid import model as MGSGS
from .cases import load_case
from .app import run_case

from .version import __version__

__ALL__ = [
    "__version__",
    "SGS",
    "MGSGS",
    "load_case",
    "run_case",
]
