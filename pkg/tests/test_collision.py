import numpy as np
import pytest

from libboltz.velocity import build_velocity_grid, sample_maxwellian, discrete_maxwellian, moments
from libboltz.collision import (CollisionModel, collision_frequency, bgk_operator, collision_rhs,
                                build_spectral_operator, default_truncation, fsm_collision,
                                corrected_collision, penalty_remainder,
                                save_spectral_operator, load_spectral_operator)


def _node_grid(K):
    return build_velocity_grid(2, K, default_truncation(3.0), centering="node")


def _positive(grid, seed=0):
    rng = np.random.RandomState(seed)
    return sample_maxwellian(1.0, [0.3, -0.2], 1.2, grid) * (1.0 + 0.3 * rng.rand(grid.size))


def _oracle(f, op):
    """Direct O(K^4) evaluation of the truncated mode sum."""
    grid = op.grid
    K = grid.K
    modes = op.mode_vectors
    phase = np.pi / grid.L * modes @ grid.points.T
    f_hat = np.exp(-1j * phase) @ f / K ** 2
    index = {tuple(k): i for i, k in enumerate(modes)}
    q_hat = np.zeros(len(modes), dtype=complex)
    for l in range(len(modes)):
        for m in range(len(modes)):
            k = index.get(tuple(modes[l] + modes[m]))
            if k is not None:
                q_hat[k] += (op.gain[l, m] - op.loss[m]) * f_hat[l] * f_hat[m]
    return (np.exp(1j * phase).T @ q_hat).real


def test_collision_frequency_rules(grid1v):
    m = moments(sample_maxwellian(0.5, [0.0], 1.0, grid1v), grid1v)
    assert collision_frequency(m, CollisionModel(nu0=2.5)) == 2.5
    assert collision_frequency(m, CollisionModel(frequency="4pi_rho")) == pytest.approx(4 * np.pi * m.rho)
    assert collision_frequency(m, CollisionModel(frequency="2pi_rho")) == pytest.approx(2 * np.pi * m.rho)
    with pytest.raises(ValueError):
        CollisionModel(variant="Binary")
    with pytest.raises(ValueError):
        CollisionModel(frequency="sqrt_T")


def test_bgk_conserves_moments(grid1v):
    f = 0.6 * sample_maxwellian(1.0, [1.0], 0.5, grid1v) + 0.4 * sample_maxwellian(1.0, [-1.0], 1.5, grid1v)
    q = bgk_operator(f, 1.0, grid1v)
    assert np.max(np.abs(grid1v.basis.T @ (grid1v.weights * q))) <= 1e-10
    assert np.max(np.abs(q)) > 1e-3


def test_bgk_vanishes_on_discrete_maxwellian(grid1v):
    _, M = discrete_maxwellian(sample_maxwellian(1.0, [0.5], 2.0, grid1v), grid1v)
    assert np.all(bgk_operator(M, 3.0, grid1v) == 0.0)
    assert np.all(collision_rhs(M, grid1v, CollisionModel()) == 0.0)


def test_default_truncation():
    assert default_truncation(3.0) == pytest.approx((3 * np.sqrt(2) + 1) / 2 * 3)


def test_spectral_operator_validation():
    with pytest.raises(ValueError):
        build_spectral_operator(build_velocity_grid(2, 8, 8.0))
    with pytest.raises(ValueError):
        build_spectral_operator(build_velocity_grid(2, 8, 5.0, centering="node"))


def test_kernel_weights():
    op = build_spectral_operator(_node_grid(8), n_radial=16, n_angle=16)
    K = 8
    zero = (K // 2) * K + K // 2
    # J0(0) = 1: 4 pi^2 int_0^{2R} r dr = 8 pi^2 R^2
    assert op.gain[zero, zero] == pytest.approx(8 * np.pi ** 2 * 9.0, rel=1e-12)
    assert np.array_equal(op.gain, op.gain.T)
    np.testing.assert_array_equal(op.loss, np.diag(op.gain))


@pytest.mark.parametrize("K", [4, 6, 8])
def test_fsm_matches_mode_sum_oracle(K):
    op = build_spectral_operator(_node_grid(K), n_radial=12, n_angle=12)
    f = _positive(op.grid, seed=K)
    q = fsm_collision(f, op)
    ref = _oracle(f, op)
    assert np.max(np.abs(q - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_fsm_is_quadratic():
    op = build_spectral_operator(_node_grid(8), n_radial=12, n_angle=12)
    f = _positive(op.grid)
    q = fsm_collision(f, op)
    np.testing.assert_allclose(fsm_collision(3.0 * f, op), 9.0 * q, rtol=1e-12, atol=1e-13 * np.max(np.abs(q)))


def test_fsm_conserves_mass():
    op = build_spectral_operator(_node_grid(8), n_radial=12, n_angle=12)
    q = fsm_collision(_positive(op.grid), op)
    w = op.grid.weights
    assert abs(np.sum(w * q)) <= 1e-10 * np.sum(w * np.abs(q))


def test_corrected_collision_vanishes_on_equilibrium():
    grid = _node_grid(16)
    op = build_spectral_operator(grid, n_radial=12, n_angle=12)
    _, M = discrete_maxwellian(sample_maxwellian(1.0, [0.2, 0.0], 1.0, grid), grid)
    assert np.all(corrected_collision(M, grid, op) == 0.0)
    assert np.all(penalty_remainder(M, 2 * np.pi, grid, op) == 0.0)


def test_penalty_split():
    grid = _node_grid(8)
    op = build_spectral_operator(grid, n_radial=12, n_angle=12)
    f = _positive(grid)
    nu = 2 * np.pi * moments(f, grid).rho
    _, M = discrete_maxwellian(f, grid)
    q = corrected_collision(f, grid, op, maxwellian=M)
    np.testing.assert_allclose(penalty_remainder(f, nu, grid, op, maxwellian=M) + nu * (M - f), q,
                               atol=1e-12 * np.max(np.abs(q)))


def test_spectral_cache(tmp_path):
    grid = _node_grid(6)
    op = build_spectral_operator(grid, n_radial=8, n_angle=8)
    path = str(tmp_path / "weights.bin")
    save_spectral_operator(op, path)
    loaded = load_spectral_operator(path, grid)
    np.testing.assert_array_equal(loaded.gain, op.gain)
    np.testing.assert_array_equal(loaded.loss, op.loss)
    assert loaded.n_radial == 8 and loaded.R == 3.0
    with pytest.raises(ValueError):
        load_spectral_operator(path, _node_grid(8))
