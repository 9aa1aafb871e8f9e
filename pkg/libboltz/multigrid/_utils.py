# (mesh dim, scheme order) -> (pre_smooth, post_smooth, coarsest cells per axis)
MG_DEFAULTS = {
    (1, 1): (1, 1, 4),
    (1, 2): (5, 1, 8),
    (2, 1): (1, 1, 5),
    (2, 2): (5, 1, 5),
}


def _check_mg_config(config, mesh_dim):
    """
    Check multigrid settings in config["mg"] and complete them with defaults.

    Parameters
    ----------
    config: dict
        Solver configuration; config["mg"] may hold 'pre_smooth',
        'post_smooth', 'coarsest_cells', 'coarsest_max_iter' and
        'coarsest_factor'.
    mesh_dim: int
        Spatial dimension of the fine mesh.
    """
    pre, post, coarsest = MG_DEFAULTS[(mesh_dim, config["order"])]
    default_config = {
        "pre_smooth": pre,
        "post_smooth": post,
        "coarsest_cells": coarsest,
        "coarsest_max_iter": 50,
        "coarsest_factor": 0.1,
    }
    mg = config.setdefault("mg", {})
    for k in default_config.keys():
        if mg.get(k) is None:
            mg[k] = default_config[k]
    for k in ("pre_smooth", "post_smooth"):
        if int(mg[k]) != mg[k] or mg[k] < 0:
            raise ValueError("mg.%s must be a non-negative integer, got %r." % (k, mg[k]))
    for k in ("coarsest_cells", "coarsest_max_iter"):
        if int(mg[k]) != mg[k] or mg[k] < 1:
            raise ValueError("mg.%s must be a positive integer, got %r." % (k, mg[k]))
    if not 0 < mg["coarsest_factor"] <= 1:
        raise ValueError("mg.coarsest_factor must lie in (0, 1], got %r." % (mg["coarsest_factor"],))
    return mg
