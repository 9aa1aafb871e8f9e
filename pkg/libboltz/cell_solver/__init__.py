"""Cell-local nonlinear solvers.
"""
from ._utils import CellLocalProblem
from ._utils import MomentDefect
from ._utils import assemble_cell_problem
from ._fp_core import fp_solve
from ._pfp_core import precond_moment_defect
from ._pfp_core import relaxed_moment_defect
from ._pfp_core import solve_weighted_maxwellian
from ._pfp_core import pfp_solve

__ALL__ = [
    "CellLocalProblem",
    "MomentDefect",
    "assemble_cell_problem",
    "fp_solve",
    "precond_moment_defect",
    "relaxed_moment_defect",
    "solve_weighted_maxwellian",
    "pfp_solve",
]
