import numpy as np
import pytest

from libboltz.velocity import sample_maxwellian, discrete_maxwellian
from libboltz.cell_solver import (CellLocalProblem, MomentDefect, fp_solve, pfp_solve,
                                  precond_moment_defect, relaxed_moment_defect,
                                  solve_weighted_maxwellian)
from libboltz.utils import ConvergenceError, ExistenceError


def _manufactured(grid, eps, h=1.0 / 64):
    """Problem whose solution is a known non-equilibrium g*."""
    g_star = (0.98 * sample_maxwellian(1.0, [0.0], 1.0, grid)
              + 0.02 * sample_maxwellian(1.0, [0.5], 0.5, grid))
    _, M_star = discrete_maxwellian(g_star, grid)
    a = np.abs(grid.axis) / h
    nu = 1.0
    r = nu / eps * (M_star - g_star) - a * g_star
    return CellLocalProblem(a, r, nu, eps, grid), g_star, M_star


def test_moment_defect_existence():
    assert MomentDefect([1.0, 0.5, 1.0]).exists
    assert not MomentDefect([1.0, 1.5, 1.0]).exists
    assert not MomentDefect([-1.0, 0.0, 1.0]).exists


def test_problem_validation(grid1v):
    with pytest.raises(ValueError):
        CellLocalProblem(np.ones(3), np.zeros(3), 1.0, 1.0, grid1v)
    with pytest.raises(ValueError):
        CellLocalProblem(np.ones(grid1v.size), np.zeros(grid1v.size), 0.0, 1.0, grid1v)


def test_fp_recovers_manufactured_solution(grid1v):
    problem, g_star, M_star = _manufactured(grid1v, eps=1.0)
    g, n_iter = fp_solve(problem, M_star, tol=1e-10)
    assert n_iter > 0
    np.testing.assert_allclose(g, g_star, atol=1e-9)


def test_pfp_recovers_manufactured_solution(grid1v):
    problem, g_star, M_star = _manufactured(grid1v, eps=1.0)
    g, n_iter, fallback = pfp_solve(problem, M_star, tol=1e-10)
    assert not fallback
    np.testing.assert_allclose(g, g_star, atol=1e-9)


def test_pfp_beats_fp_at_small_eps(grid1v):
    problem, g_star, _ = _manufactured(grid1v, eps=1e-3)
    g0 = sample_maxwellian(1.0, [0.0], 1.05, grid1v)
    g_pfp, n_pfp, fallback = pfp_solve(problem, g0, tol=1e-8)
    g_fp, n_fp = fp_solve(problem, g0, tol=1e-8, max_iter=5000)
    assert not fallback
    assert n_pfp <= 10
    assert n_fp >= 3 * n_pfp
    np.testing.assert_allclose(g_pfp, g_fp, atol=1e-8)


def test_relaxed_defect_reduces_to_plain(grid1v):
    problem, _, M_star = _manufactured(grid1v, eps=1e-2)
    g = sample_maxwellian(1.0, [0.1], 1.1, grid1v)
    _, M = discrete_maxwellian(g, grid1v)
    np.testing.assert_allclose(relaxed_moment_defect(problem, g, M, 0.0).values,
                               precond_moment_defect(problem, g, M).values, rtol=1e-12, atol=1e-10)


def test_weighted_maxwellian_matches_defect(grid1v):
    problem, _, M_star = _manufactured(grid1v, eps=1e-2)
    s = precond_moment_defect(problem, M_star)
    assert s.exists
    _, M = solve_weighted_maxwellian(s, problem)
    got = grid1v.basis.T @ (grid1v.weights * problem.a * M)
    assert np.max(np.abs(got - s.values)) <= 1e-11 * np.max(np.abs(s.values))
    with pytest.raises(ExistenceError):
        solve_weighted_maxwellian(MomentDefect(-s.values), problem)


def _tail_heavy_start(grid):
    """Problem with solution g* and a start whose plain defect has negative mass."""
    v = grid.axis
    g_star = np.exp(-v ** 2 / 2) / np.sqrt(2 * np.pi)
    a = 1.0 + 100.0 * (np.abs(v) > 4.0)
    problem = CellLocalProblem(a, -a * g_star, 1.0, 1.0, grid)
    bumps = np.exp(-(v - 5.0) ** 2 / 0.18) + np.exp(-(v + 5.0) ** 2 / 0.18)
    g0 = g_star + 0.025 * bumps / np.sum(grid.weights * bumps)
    return problem, g_star, g0


def test_nonexistent_defect_falls_back(grid1v):
    problem, g_star, g0 = _tail_heavy_start(grid1v)
    assert precond_moment_defect(problem, g0).values[0] < 0.0
    g, n_iter, fallback = pfp_solve(problem, g0, tol=1e-8)
    assert fallback
    _, M = discrete_maxwellian(g, grid1v)
    assert problem.residual(g, M) <= 1e-8
    np.testing.assert_allclose(g, g_star, atol=1e-7)


def test_inner_budget_exhausted(grid1v):
    problem, _, M_star = _manufactured(grid1v, eps=1e-3)
    with pytest.raises(ConvergenceError) as e:
        fp_solve(problem, sample_maxwellian(1.0, [0.0], 1.5, grid1v), tol=1e-12, max_iter=2)
    assert e.value.iterations == 2


def test_relaxation_avoids_fallback(grid1v):
    problem, g_star, g0 = _tail_heavy_start(grid1v)
    _, M0 = discrete_maxwellian(g0, grid1v)
    assert not precond_moment_defect(problem, g0, M0).exists
    assert relaxed_moment_defect(problem, g0, M0, 50.0).exists
    g, n_iter, fallback = pfp_solve(problem, g0, tol=1e-8, tau=50.0)
    assert not fallback and n_iter > 0
    _, M = discrete_maxwellian(g, grid1v)
    assert problem.residual(g, M) <= 1e-8
    np.testing.assert_allclose(g, g_star, atol=1e-7)


def _random_problem(grid, eps, rng, h=1.0 / 64):
    base = sample_maxwellian(rng.uniform(0.5, 2.0), [rng.uniform(-0.5, 0.5)], rng.uniform(0.7, 1.5), grid)
    g_star = base * (1.0 + 0.1 * rng.uniform(-1.0, 1.0, grid.size))
    _, M_star = discrete_maxwellian(g_star, grid)
    a = np.abs(grid.axis) / h
    r = (M_star - g_star) / eps - a * g_star
    return CellLocalProblem(a, r, 1.0, eps, grid), g_star, M_star


@pytest.mark.slow
@pytest.mark.parametrize("eps", [1.0, 1e-1, 1e-2, 1e-3])
def test_fp_and_pfp_solve_the_same_problems(grid1v, eps):
    rng = np.random.RandomState(int(round(-np.log10(eps))))
    for _ in range(25):
        problem, g_star, M_star = _random_problem(grid1v, eps, rng)
        g_pfp, _, _ = pfp_solve(problem, M_star, tol=1e-9, max_iter=50000)
        g_fp, _ = fp_solve(problem, M_star, tol=1e-9, max_iter=50000)
        assert np.sqrt(np.sum(grid1v.weights * (g_pfp - g_fp) ** 2)) <= 1e-8


@pytest.mark.slow
def test_pfp_counts_do_not_grow_as_eps_shrinks(grid1v):
    a = np.abs(grid1v.axis) * 256.0
    counts = {1e-2: ([], []), 1e-4: ([], [])}
    for seed in range(8):
        rng = np.random.RandomState(seed)
        u, T = rng.uniform(-0.3, 0.3), rng.uniform(0.8, 1.2)
        ripple = 1.0 + 0.05 * np.cos(rng.uniform(0.5, 1.5) * grid1v.axis)
        background = sample_maxwellian(1.0, [u], T, grid1v) * ripple
        g0 = sample_maxwellian(1.0, [u], 1.05 * T, grid1v)
        for eps, (n_pfp, n_fp) in counts.items():
            problem = CellLocalProblem(a, -a * background, 1.0, eps, grid1v)
            n_pfp.append(pfp_solve(problem, g0, tol=1e-8, max_iter=50000)[1])
            n_fp.append(fp_solve(problem, g0, tol=1e-8, max_iter=50000)[1])
    assert np.mean(counts[1e-4][0]) <= np.mean(counts[1e-2][0])
    assert np.mean(counts[1e-4][1]) > np.mean(counts[1e-2][1])
