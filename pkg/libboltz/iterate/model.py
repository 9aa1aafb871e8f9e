import time

from ..mesh import rescale_mass, total_mass, global_residual
from ..utils import ConvergenceError, NonPhysicalStateError
from ._utils import _check_config, InnerStats, IterationReport
from ._sweep import sgs_sweep, source_iteration_step


class model(object):
    """Outer iteration driver for SI, SGS-FP and SGS-PFP"""
    def __init__(self, config):
        """
        Solver Class Constructor.

        Parameters
        ----------
        config: dict
            Solver settings, completed in place by `_check_config`. See
            `libboltz.iterate._utils._check_config` for the defaults.
        """
        super(model, self).__init__()
        _check_config(config)
        self.config = config
        self.report = None
        self.field = None

    def _step(self, field, stats):
        method = self.config["method"]
        if method == "SI":
            self.report.fine_sweeps += 1
            return source_iteration_step(field, self.config)
        if method in ("SGS-FP", "SGS-PFP"):
            inner = method.split("-")[1]
            field = sgs_sweep(field, "forward", self.config, inner_solver=inner, stats=stats)
            field = sgs_sweep(field, "backward", self.config, inner_solver=inner, stats=stats)
            self.report.fine_sweeps += 2
            return field
        raise ValueError("Method %r is driven by libboltz.multigrid." % method)

    def solve(self, field, num_skip_steps=1, silent=True):
        """
        Iterate until the residual falls below the outer tolerance.

        Parameters
        ----------
        field: DistributionField
            Initial field, of the configured scheme order.
        num_skip_steps: int
            Print the residual every `num_skip_steps` iterations.
        silent: boolean
            Suppress printing.

        Returns
        -------
        tuple
            (final field, IterationReport). The report status is 'converged'
            or 'max_iter'.

        Notes
        -----
        Every outer iteration is followed by a uniform rescaling to the
        configured total mass. Failures raise with the partial report
        attached as `report` and status 'failed'.
        """
        config = self.config
        if field.order != config["order"]:
            raise ValueError("Field order %d differs from configured order %d." % (field.order, config["order"]))
        C = config["mass"] if config["mass"] is not None else field.mesh.domain_volume
        self.report = IterationReport(config["method"])
        self.field = field
        time_start = time.perf_counter()
        for index in range(config["max_outer"]):
            stats = InnerStats()
            try:
                field = self._step(field, stats)
                field = rescale_mass(field, C)
                res = global_residual(field, config)
            except (ConvergenceError, NonPhysicalStateError) as e:
                self.report.status = "failed"
                e.report = self.report
                raise
            self.report.append(res, stats, time.perf_counter() - time_start, total_mass(field))
            self.field = field
            if not silent and (index + 1) % num_skip_steps == 0:
                print('Residual at iteration {}: {:.5e}'.format(index + 1, res))
            if res < config["outer_tol"]:
                self.report.status = "converged"
                break
        else:
            self.report.status = "max_iter"
        if not silent:
            print("# %s finished (%s) after %d iterations, residual %.3e"
                  % (config["method"], self.report.status, self.report.n_iter, self.report.final_residual))
        return field, self.report

    def save_history(self, path):
        """Write the residual history of the last solve to CSV."""
        if self.report is None:
            raise ValueError("Nothing solved yet.")
        self.report.save_csv(path)


def run_solver(config, initial_field, silent=True):
    """
    Run SI, SGS-FP or SGS-PFP from an initial field.

    Returns
    -------
    tuple
        (final field, IterationReport).
    """
    return model(config).solve(initial_field, silent=silent)
