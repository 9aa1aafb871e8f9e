import numpy as np
import pytest

from libboltz.velocity import (build_velocity_grid, moments, heat_flux, sample_maxwellian, maxwellian_from_moments,
                               discrete_maxwellian, evaluate_exponential, MaxwellianParams, Moments)
from libboltz.utils import NonPhysicalStateError


def _bimodal(grid):
    return (0.7 * sample_maxwellian(1.0, 0.8 * np.ones(grid.dim), 0.6, grid)
            + 0.3 * sample_maxwellian(1.0, -1.0 * np.ones(grid.dim), 1.4, grid))


def test_cell_centered_grid():
    grid = build_velocity_grid(1, 4, 2.0)
    np.testing.assert_allclose(grid.axis, [-1.5, -0.5, 0.5, 1.5])
    assert grid.dv == 1.0
    assert np.sum(grid.weights) == pytest.approx(4.0)


def test_node_grid():
    grid = build_velocity_grid(2, 4, 2.0, centering="node")
    np.testing.assert_array_equal(grid.indices, [-1, 0, 1, 2])
    assert grid.size == 16
    assert grid.shape == (4, 4)
    np.testing.assert_allclose(grid.basis[:, -1], np.sum(grid.points ** 2, axis=1))
    with pytest.raises(ValueError):
        build_velocity_grid(2, 5, 2.0, centering="node")


def test_grid_validation():
    with pytest.raises(ValueError):
        build_velocity_grid(4, 8, 1.0)
    with pytest.raises(ValueError):
        build_velocity_grid(1, 8, -1.0)


def test_moments_of_sampled_maxwellian(grid1v):
    f = sample_maxwellian(1.3, [0.2], 0.8, grid1v)
    m = moments(f, grid1v)
    assert m.rho == pytest.approx(1.3, rel=1e-8)
    assert m.U[0] == pytest.approx(0.2, abs=1e-8)
    assert m.T == pytest.approx(0.8, rel=1e-8)
    assert m.q is None
    assert abs(heat_flux(f, grid1v, m.U)[0]) < 1e-8


def test_discrete_maxwellian_matches_moments():
    for dim, K, L in [(1, 50, 6.0), (2, 16, 6.0), (3, 10, 6.0)]:
        grid = build_velocity_grid(dim, K, L)
        f = _bimodal(grid)
        params, M = discrete_maxwellian(f, grid)
        target = grid.basis.T @ (grid.weights * f)
        got = grid.basis.T @ (grid.weights * M)
        assert np.max(np.abs(got - target)) <= 1e-11 * np.max(np.abs(target))
        assert params.gamma > 0
        np.testing.assert_allclose(M, evaluate_exponential(params, grid), rtol=1e-12)


def test_discrete_maxwellian_of_exponential_is_identity(grid1v):
    f = evaluate_exponential(MaxwellianParams(-0.3, np.array([0.4]), 0.7), grid1v)
    _, M = discrete_maxwellian(f, grid1v)
    assert np.array_equal(M, f)


def test_discrete_maxwellian_warm_start(grid1v):
    f = _bimodal(grid1v)
    params, M, n_cold = discrete_maxwellian(f, grid1v, full_output=True)
    _, M_warm, n_warm = discrete_maxwellian(f, grid1v, init=params, full_output=True)
    assert n_warm <= 1
    np.testing.assert_allclose(M_warm, M, rtol=1e-10)


def test_nonphysical_distribution(grid1v):
    f = -sample_maxwellian(1.0, [0.0], 1.0, grid1v)
    with pytest.raises(NonPhysicalStateError):
        moments(f, grid1v)
    with pytest.raises(NonPhysicalStateError):
        discrete_maxwellian(f, grid1v)
    with pytest.raises(ValueError):
        moments(np.ones(3), grid1v)


def test_moments_tuple_fields():
    m = Moments(1.0, np.zeros(2), 1.0)
    assert m._fields == ("rho", "U", "T", "q")


def test_maxwellian_from_moments_is_exact_on_truncated_grids(grid1v):
    assert abs(moments(sample_maxwellian(1.0, [0.0], 1.5, grid1v), grid1v).T - 1.5) > 1e-8
    M = maxwellian_from_moments(2.0, None, 1.5, grid1v)
    m = moments(M, grid1v)
    assert m.rho == pytest.approx(2.0, rel=1e-14)
    assert abs(m.U[0]) <= 1e-11
    assert m.T == pytest.approx(1.5, rel=1e-11)

    grid = build_velocity_grid(2, 16, 5.0)
    M = maxwellian_from_moments(0.5, [0.4, -0.2], 2.0, grid)
    m = moments(M, grid)
    np.testing.assert_allclose(m.U, [0.4, -0.2], atol=1e-11)
    assert m.T == pytest.approx(2.0, rel=1e-11)
    unit = maxwellian_from_moments(1.0, [0.4, -0.2], 2.0, grid)
    np.testing.assert_allclose(M, 0.5 * unit, rtol=1e-14)
    with pytest.raises(ValueError):
        maxwellian_from_moments(1.0, None, 0.0, grid)


def test_heat_flux_of_odd_perturbation():
    grid = build_velocity_grid(2, 16, 6.0)
    v1 = grid.points[:, 0]
    f = sample_maxwellian(1.0, [0.0, 0.0], 1.0, grid) + 0.01 * v1 * np.exp(-0.5 * grid.sq)
    U = moments(f, grid).U
    expected = np.zeros(2)
    for k in range(grid.size):
        c = grid.points[k] - U
        expected += 0.5 * grid.weights[k] * f[k] * np.dot(c, c) * c
    np.testing.assert_allclose(heat_flux(f, grid, U), expected, rtol=1e-12, atol=1e-14)
    assert abs(expected[0]) > 1e-3
