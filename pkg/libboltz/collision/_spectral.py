"""Fourier spectral collision operator for Maxwell molecules on a periodic velocity box.
"""
import numpy as np

from ..velocity import discrete_maxwellian
from ..utils import _check_ndarray

# smallest L / R ratio free of aliasing
_MIN_RATIO = (3.0 + np.sqrt(2.0)) / 2.0
DEFAULT_RATIO = (3.0 * np.sqrt(2.0) + 1.0) / 2.0
_HEADER_SIZE = 7


def default_truncation(R=3.0):
    """Velocity half-width L = (3 sqrt(2) + 1) / 2 * R."""
    return DEFAULT_RATIO * R


def _angular_mean(z, n_angle):
    # trapezoid rule for (1/2pi) int cos(z cos t) dt, i.e. J0(z)
    theta = 2.0 * np.pi * np.arange(n_angle) / n_angle
    return np.mean(np.cos(z[..., None] * np.cos(theta)), axis=-1)


class SpectralOperator(object):
    """Precomputed kernel-mode weights of the truncated collision operator"""
    def __init__(self, grid, R=3.0, n_radial=32, n_angle=32, B=1.0, gain=None, loss=None):
        """
        SpectralOperator Class Constructor.

        Parameters
        ----------
        grid: VelocityGrid
            Node-periodic velocity grid with d = 2.
        R: float
            Support radius; relative velocities are truncated to |q| <= 2R.
        n_radial: int
            Gauss-Legendre nodes in |q|.
        n_angle: int
            Trapezoid nodes per angular integral.
        B: float
            Kernel constant.
        gain, loss: np.ndarray
            Tables loaded from a cache file; computed when omitted.
        """
        super(SpectralOperator, self).__init__()
        if grid.centering != "node":
            raise ValueError("The spectral operator needs a node-periodic velocity grid.")
        if grid.dim != 2:
            raise NotImplementedError("Spectral collisions are implemented for d = 2 only.")
        if not R > 0:
            raise ValueError("R must be positive, got %r." % (R,))
        if grid.L < _MIN_RATIO * R * (1.0 - 1e-12):
            raise ValueError("L = %g is too small for R = %g (need L >= %g)." % (grid.L, R, _MIN_RATIO * R))
        if n_radial < 1 or n_angle < 1:
            raise ValueError("Quadrature node counts must be positive.")
        self.grid = grid
        self.R = float(R)
        self.L = grid.L
        self.n_radial = int(n_radial)
        self.n_angle = int(n_angle)
        self.B = float(B)

        K = grid.K
        self.modes = np.arange(-K // 2, K // 2)
        m1, m2 = np.meshgrid(self.modes, self.modes, indexing="ij")
        self.mode_vectors = np.stack([m1.ravel(), m2.ravel()], axis=1)
        phase = 2.0 * np.pi * np.outer(self.modes, grid.indices) / K
        self._forward = np.exp(-1j * phase)
        self._inverse = np.exp(1j * phase).T

        if gain is None or loss is None:
            gain, loss = self._kernel_modes()
        n = K ** 2
        if gain.shape != (n, n) or loss.shape != (n,):
            raise ValueError("Weight tables do not match the grid (K = %d)." % K)
        self.gain = gain
        self.loss = loss
        self._compress()

    def _kernel_modes(self):
        """
        Gain weights B(l, m) and loss weights B(m, m).

        Notes
        -----
        For Maxwell molecules in 2D both angular integrals reduce to
        J0 factors, so that
        B(l, m) = 4 pi^2 int_0^{2R} r J0(xi r |l + m| / 2) J0(xi r |l - m| / 2) dr
        with xi = pi / L. The weights depend on |l + m|^2 and |l - m|^2 only.
        """
        xi = np.pi / self.L
        x, w = np.polynomial.legendre.leggauss(self.n_radial)
        r = self.R * (x + 1.0)
        wr = self.R * w * r

        mv = self.mode_vectors
        n_plus = np.sum((mv[:, None, :] + mv[None, :, :]) ** 2, axis=-1)
        n_minus = np.sum((mv[:, None, :] - mv[None, :, :]) ** 2, axis=-1)
        norms, inv = np.unique(np.concatenate([n_plus.ravel(), n_minus.ravel()]), return_inverse=True)
        A = _angular_mean(0.5 * xi * np.sqrt(norms)[:, None] * r[None, :], self.n_angle)
        C = 4.0 * np.pi ** 2 * (A * wr) @ A.T

        size = n_plus.size
        gain = C[inv[:size], inv[size:]].reshape(n_plus.shape)
        diag = np.arange(len(mv))
        loss = gain[diag, diag].copy()
        return gain * self.B, loss * self.B

    def _compress(self):
        K = self.grid.K
        mv = self.mode_vectors
        sums = mv[:, None, :] + mv[None, :, :]
        valid = np.all((sums >= -K // 2) & (sums < K // 2), axis=-1)
        li, mi = np.nonzero(valid)
        s = sums[li, mi] + K // 2
        self._l = li
        self._m = mi
        self._k = s[:, 0] * K + s[:, 1]
        self._w = self.gain[li, mi] - self.loss[mi]

    def transform(self, f_values):
        """Fourier coefficients f_hat_k, with f(v_j) = sum_k f_hat_k exp(i pi k.v_j / L)."""
        K = self.grid.K
        F = f_values.reshape(K, K)
        return (self._forward @ F @ self._forward.T).ravel() / K ** 2

    def inverse(self, coeffs):
        """Point values of a truncated Fourier series, real part."""
        K = self.grid.K
        Q = self._inverse @ coeffs.reshape(K, K) @ self._inverse.T
        return Q.real.ravel()

    def mode_sum(self, coeffs):
        """Q_hat_k = sum_{l + m = k} (B(l, m) - B(m, m)) f_hat_l f_hat_m."""
        prod = self._w * coeffs[self._l] * coeffs[self._m]
        n = len(coeffs)
        return (np.bincount(self._k, weights=prod.real, minlength=n)
                + 1j * np.bincount(self._k, weights=prod.imag, minlength=n))

    def __repr__(self):
        return "SpectralOperator(K=%d, R=%g, L=%g)" % (self.grid.K, self.R, self.L)


def build_spectral_operator(grid, R=3.0, n_radial=32, n_angle=32, B=1.0):
    """
    Precompute the kernel-mode weights of the spectral collision operator.

    Parameters
    ----------
    grid: VelocityGrid
        Node-periodic grid, d = 2, with L >= (3 + sqrt 2) / 2 R.
    R: float
        Support radius.
    n_radial, n_angle: int
        Quadrature nodes (Gauss-Legendre in radius, trapezoid in angle).
    B: float
        Kernel constant.

    Returns
    -------
    SpectralOperator
        Immutable operator, shareable across cells.
    """
    return SpectralOperator(grid, R=R, n_radial=n_radial, n_angle=n_angle, B=B)


def _check_grid(f_values, op):
    _check_ndarray(f_values)
    if f_values.shape != (op.grid.size,):
        raise ValueError("Distribution has shape %s, operator grid needs (%d,)." % (f_values.shape, op.grid.size))


def fsm_collision(f_values, op):
    """
    Spectral evaluation of the binary collision term Q[f, f].

    Parameters
    ----------
    f_values: np.ndarray
        Distribution on the operator's grid.
    op: SpectralOperator
        Precomputed operator.

    Returns
    -------
    np.ndarray
        Collision term at the grid points.
    """
    _check_grid(f_values, op)
    return op.inverse(op.mode_sum(op.transform(f_values)))


def corrected_collision(f_values, grid, op, tol=1e-12, maxwellian=None):
    """
    Steady-state preserving collision term Q_FSM[f] - Q_FSM[M[f]].

    Parameters
    ----------
    f_values: np.ndarray
        Distribution on the grid.
    grid: VelocityGrid
        Velocity grid, identical to the operator's.
    op: SpectralOperator
        Precomputed operator.
    tol: float
        Newton tolerance of the discrete Maxwellian.
    maxwellian: np.ndarray
        Precomputed M[f].

    Returns
    -------
    np.ndarray
        Collision term, exactly zero when f is its own discrete Maxwellian.
    """
    if grid.size != op.grid.size or grid.L != op.grid.L:
        raise ValueError("Grid %r does not match operator grid %r." % (grid, op.grid))
    if maxwellian is None:
        _, maxwellian = discrete_maxwellian(f_values, grid, tol=tol)
    return fsm_collision(f_values, op) - fsm_collision(maxwellian, op)


def penalty_remainder(f_values, nu, grid, op, tol=1e-12, maxwellian=None):
    """
    Remainder P[f] = Q[f, f] - nu (M[f] - f) of the BGK penalty split.

    Parameters
    ----------
    f_values: np.ndarray
        Distribution on the grid.
    nu: float
        Penalty frequency.
    grid: VelocityGrid
        Velocity grid.
    op: SpectralOperator
        Precomputed operator.

    Returns
    -------
    np.ndarray
        Explicit part of the collision term.
    """
    if maxwellian is None:
        _, maxwellian = discrete_maxwellian(f_values, grid, tol=tol)
    q = corrected_collision(f_values, grid, op, maxwellian=maxwellian)
    return q - nu * (maxwellian - f_values)


def save_spectral_operator(op, path):
    """
    Write the weight tables to a binary cache file.

    Notes
    -----
    Layout: seven little-endian float64 header values
    (d, K, R, L, n_radial, n_angle, B), then the gain table row-major,
    then the loss vector.
    """
    header = np.array([op.grid.dim, op.grid.K, op.R, op.L, op.n_radial, op.n_angle, op.B], dtype="<f8")
    with open(path, "wb") as fp:
        header.tofile(fp)
        np.ascontiguousarray(op.gain, dtype="<f8").tofile(fp)
        np.ascontiguousarray(op.loss, dtype="<f8").tofile(fp)


def load_spectral_operator(path, grid):
    """
    Read a cache file written by `save_spectral_operator`.

    Parameters
    ----------
    path: str
        Cache file.
    grid: VelocityGrid
        Grid the operator will be used on; must match the header.

    Returns
    -------
    SpectralOperator
        Operator with the cached tables.
    """
    data = np.fromfile(path, dtype="<f8")
    if data.size < _HEADER_SIZE:
        raise ValueError("Spectral cache %s is truncated." % path)
    d, K, R, L, n_radial, n_angle, B = data[:_HEADER_SIZE]
    if int(d) != grid.dim or int(K) != grid.K or abs(L - grid.L) > 1e-12 * grid.L:
        raise ValueError("Spectral cache %s was built for d=%d, K=%d, L=%g." % (path, d, K, L))
    n = grid.K ** grid.dim
    if data.size != _HEADER_SIZE + n * n + n:
        raise ValueError("Spectral cache %s has %d values, expected %d." % (path, data.size, _HEADER_SIZE + n * n + n))
    gain = data[_HEADER_SIZE:_HEADER_SIZE + n * n].reshape(n, n).astype(float)
    loss = data[_HEADER_SIZE + n * n:].astype(float)
    return SpectralOperator(grid, R=R, n_radial=int(n_radial), n_angle=int(n_angle), B=B, gain=gain, loss=loss)
