from .. import iterate
from ._utils import _check_mg_config
from ._transfer import MgHierarchy, v_cycle


class model(iterate.model):
    """FAS multigrid with SGS-PFP smoothing, one V-cycle per outer iteration"""
    def __init__(self, config):
        """
        Solver Class Constructor.

        Parameters
        ----------
        config: dict
            Solver settings as for `libboltz.iterate.model`; config["mg"]
            may override the smoothing counts and the coarsest mesh size.
        """
        config["method"] = "MG-SGS-PFP"
        super(model, self).__init__(config)
        self.hierarchy = None

    def _step(self, field, stats):
        return v_cycle(self.hierarchy, 0, field, None, self.config, report=self.report, stats=stats)

    def solve(self, field, num_skip_steps=1, silent=True):
        _check_mg_config(self.config, field.mesh.dim)
        self.hierarchy = MgHierarchy(field.mesh, self.config["mg"]["coarsest_cells"])
        if not silent:
            print("# V-cycle over %r" % (self.hierarchy,))
        return super(model, self).solve(field, num_skip_steps=num_skip_steps, silent=silent)


def run_mg_solver(config, initial_field, silent=True):
    """
    Run MG-SGS-PFP from an initial field.

    Returns
    -------
    tuple
        (final field, IterationReport).
    """
    return model(config).solve(initial_field, silent=silent)
