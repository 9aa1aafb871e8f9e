import numpy as np
import pytest

from libboltz.velocity import build_velocity_grid, discrete_maxwellian, sample_maxwellian
from libboltz.cell_solver import CellLocalProblem
from libboltz.collision import CollisionModel
from libboltz.mesh import SpatialMesh, DistributionField, TransportStencil, equilibrium_field, moments_df
from libboltz.iterate import model, run_solver, sgs_sweep, source_iteration_step
from libboltz.iterate._utils import _check_config, HISTORY_COLUMNS
from libboltz.iterate._sweep import _warm_start
from libboltz.utils import ConvergenceError
from conftest import walls_1d


def test_check_config_defaults():
    config = _check_config({"walls": walls_1d(), "collision": CollisionModel(), "threads": 1})
    assert config["method"] == "SGS-PFP"
    assert config["outer_tol"] == 1e-5 and config["inner_tol"] == 1e-8
    assert config["order"] == 1 and config["tau"] == 0.0 and config["mass"] is None


@pytest.mark.parametrize("bad", [
    {"order": 3},
    {"method": "SI", "order": 2},
    {"tau": 0.5},
    {"eps": 0.0},
    {"method": "Jacobi"},
])
def test_check_config_rejects(bad):
    config = {"walls": walls_1d(), "collision": CollisionModel(), "threads": 1}
    config.update(bad)
    with pytest.raises(ValueError):
        _check_config(config)


def test_check_config_types():
    with pytest.raises(TypeError):
        _check_config({"walls": [None], "collision": CollisionModel(), "threads": 1})
    with pytest.raises(ValueError):
        _check_config({"collision": CollisionModel(), "threads": 1})


@pytest.mark.parametrize("method", ["SI", "SGS-FP", "SGS-PFP"])
def test_equal_wall_equilibrium_converges_at_once(heat_problem, method):
    config, field = heat_problem(T=(1.0, 1.0), eps=1e-2, method=method)
    out, report = run_solver(config, field)
    assert report.status == "converged"
    assert report.n_iter == 1
    assert report.final_residual <= 1e-10


def test_mass_history_and_report(heat_problem):
    config, field = heat_problem(max_outer=5, outer_tol=1e-14)
    solver = model(config)
    out, report = solver.solve(field)
    assert report.status == "max_iter"
    np.testing.assert_allclose(report.masses, 1.0, rtol=1e-13)
    assert report.fine_sweeps == 10
    df = report.to_frame()
    assert list(df.columns) == HISTORY_COLUMNS
    assert len(df) == report.summary()["iterations"] == 5
    assert solver.field is out


def test_save_history(heat_problem, tmp_path):
    config, field = heat_problem(max_outer=3, outer_tol=1e-14)
    solver = model(config)
    with pytest.raises(ValueError):
        solver.save_history(str(tmp_path / "history.csv"))
    solver.solve(field)
    solver.save_history(str(tmp_path / "history.csv"))
    assert (tmp_path / "history.csv").read_text().splitlines()[0] == ",".join(HISTORY_COLUMNS)


def test_second_order_heat_profile(heat_problem):
    config, field = heat_problem(order=2, outer_tol=1e-8)
    out, report = model(config).solve(field)
    assert report.converged
    df = moments_df(out)
    assert np.all(np.diff(df["T"]) > 0)
    assert df["T"].iloc[0] > 1.0 and df["T"].iloc[-1] < 2.0


def test_inner_solvers_give_the_same_iterates(heat_problem):
    iterates = {}
    for method in ("SGS-FP", "SGS-PFP"):
        config, field = heat_problem(eps=1e-2, method=method, max_outer=3, outer_tol=1e-14,
                                     inner_tol=1e-11, max_inner=5000)
        iterates[method], _ = run_solver(config, field)
    np.testing.assert_allclose(iterates["SGS-FP"].values, iterates["SGS-PFP"].values, atol=1e-9)


@pytest.mark.slow
def test_inner_solvers_agree_over_ten_sweeps(heat_problem):
    iterates = {}
    for method in ("SGS-FP", "SGS-PFP"):
        config, field = heat_problem(N=32, K=16, eps=1e-2, method=method, max_outer=10, outer_tol=1e-14,
                                     inner_tol=1e-12, max_inner=20000)
        iterates[method], report = run_solver(config, field)
        assert report.n_iter == 10
    diff = iterates["SGS-FP"].values - iterates["SGS-PFP"].values
    grid = iterates["SGS-FP"].grid
    assert np.max(np.sqrt((diff ** 2) @ grid.weights)) <= 1e-10


def test_mirrored_walls_mirror_the_solution(heat_problem):
    profiles = []
    for T in [(1.0, 2.0), (2.0, 1.0)]:
        config, field = heat_problem(T=T, outer_tol=1e-10, inner_tol=1e-12)
        out, report = run_solver(config, field)
        assert report.converged
        profiles.append(moments_df(out))
    left, right = profiles
    assert np.argmax(left["T"].values) == len(left) - 1 and np.argmax(right["T"].values) == 0
    np.testing.assert_allclose(left["T"].values, right["T"].values[::-1], atol=1e-8)
    np.testing.assert_allclose(left["rho"].values, right["rho"].values[::-1], atol=1e-8)
    np.testing.assert_allclose(left["U1"].values, -right["U1"].values[::-1], atol=1e-8)


def test_warm_start_keeps_the_better_guess(grid1v):
    h = 1.0 / 64
    g_star = 0.98 * sample_maxwellian(1.0, [0.0], 1.0, grid1v) + 0.02 * sample_maxwellian(1.0, [0.5], 0.5, grid1v)
    _, M_star = discrete_maxwellian(g_star, grid1v)
    a = np.abs(grid1v.axis) / h
    problem = CellLocalProblem(a, 10.0 * (M_star - g_star) - a * g_star, 1.0, 0.1, grid1v)
    assert _warm_start(problem, M_star, g_star - M_star) is not M_star
    np.testing.assert_allclose(_warm_start(problem, M_star, g_star - M_star), g_star, rtol=1e-14)
    assert _warm_start(problem, M_star, np.zeros(grid1v.size)) is M_star
    assert _warm_start(problem, M_star, -2.0 * M_star) is M_star
    assert _warm_start(problem, g_star, M_star - g_star) is g_star


def test_inner_failure_carries_context(heat_problem):
    config, field = heat_problem(eps=1e-3, method="SGS-FP", max_inner=1)
    with pytest.raises(ConvergenceError) as e:
        run_solver(config, field)
    assert e.value.cell == (0,)
    assert e.value.report.status == "failed"
    assert e.value.report.n_iter == 0


def test_order_mismatch(heat_problem):
    config, field = heat_problem(order=1)
    with pytest.raises(ValueError):
        model(config).solve(DistributionField(field.mesh, field.grid, field.values, order=2))


def test_sweep_arguments(heat_problem):
    config, field = heat_problem()
    _check_config(config)
    with pytest.raises(ValueError):
        sgs_sweep(field, "sideways", config)
    with pytest.raises(ValueError):
        sgs_sweep(field, "forward", config, inner_solver="Newton")


def test_source_iteration_matches_dense_solve():
    N, eps = 4, 0.5
    grid = build_velocity_grid(1, 6, 4.0)
    mesh = SpatialMesh([(-0.5, 0.5)], (N,))
    walls = walls_1d(1.0, 2.0)
    rng = np.random.RandomState(3)
    base = equilibrium_field(mesh, grid, 1.5, 1.0)
    field = base.with_values(base.values * (1.0 + 0.4 * rng.rand(N, grid.size)))
    config = _check_config({"walls": walls, "collision": CollisionModel(), "eps": eps,
                            "method": "SI", "threads": 1})
    new = source_iteration_step(field, config).values

    h, kappa = mesh.h[0], 1.0 / eps
    stencil = TransportStencil(mesh, grid, walls)
    ghost_lo = stencil.closures[(0, "lo")].merged(field.values[0])
    ghost_hi = stencil.closures[(0, "hi")].merged(field.values[N - 1])
    M = np.array([discrete_maxwellian(field.values[j], grid)[1] for j in range(N)])
    for k, v in enumerate(grid.axis):
        A = np.diag(np.full(N, abs(v) / h + kappa))
        b = kappa * M[:, k]
        for j in range(N):
            upstream = j - 1 if v > 0 else j + 1
            if 0 <= upstream < N:
                A[j, upstream] = -abs(v) / h
            else:
                b[j] += abs(v) / h * (ghost_lo[k] if v > 0 else ghost_hi[k])
        np.testing.assert_allclose(new[:, k], np.linalg.solve(A, b), rtol=1e-12)


def test_source_iteration_rejects_second_order(heat_problem):
    config, field = heat_problem(order=2)
    _check_config(config)
    with pytest.raises(ValueError):
        source_iteration_step(field, config)


@pytest.mark.slow
@pytest.mark.parametrize("eps, bound", [(1.0, 11), (1e-1, 11), (1e-2, 11), (1e-3, 8)])
def test_pfp_inner_iterations_bounded(heat_problem, eps, bound):
    config, field = heat_problem(N=256, K=50, eps=eps, max_outer=20, outer_tol=1e-14)
    _, report = run_solver(config, field)
    assert max(report.avg_inner) <= bound


@pytest.mark.slow
def test_preconditioner_cuts_inner_iterations(heat_problem):
    avg = {}
    for method in ("SGS-FP", "SGS-PFP"):
        config, field = heat_problem(N=64, K=50, eps=1e-3, method=method, max_outer=10,
                                     outer_tol=1e-14, max_inner=5000)
        _, report = run_solver(config, field)
        avg[method] = np.mean(report.avg_inner)
    assert avg["SGS-FP"] >= 3 * avg["SGS-PFP"]


@pytest.mark.slow
def test_sgs_needs_fewer_outer_iterations_than_si(heat_problem):
    counts = {}
    for method in ("SI", "SGS-PFP"):
        config, field = heat_problem(N=64, K=50, eps=1e-2, method=method, max_outer=20000)
        _, report = run_solver(config, field)
        assert report.converged
        counts[method] = report.n_iter
    assert counts["SI"] >= 3 * counts["SGS-PFP"]
