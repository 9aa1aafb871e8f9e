import numpy as np

from ..velocity import discrete_maxwellian, moments
from ._spectral import corrected_collision
from ..utils import NonPhysicalStateError

VARIANTS = ("BGK", "Binary")
FREQUENCY_RULES = ("constant", "4pi_rho", "2pi_rho")


class CollisionModel(object):
    """Collision model of a run"""
    def __init__(self, variant="BGK", frequency="constant", nu0=1.0, B=1.0, operator=None):
        """
        CollisionModel Class Constructor.

        Parameters
        ----------
        variant: str
            'BGK' relaxation or 'Binary' collisions of Maxwell molecules.
        frequency: str
            Collision frequency rule: 'constant' (nu0), '4pi_rho' or '2pi_rho'.
        nu0: float
            Frequency of the constant rule.
        B: float
            Collision kernel constant of Maxwell molecules.
        operator: SpectralOperator
            Precomputed spectral operator, required by 'Binary'.
        """
        super(CollisionModel, self).__init__()
        if variant not in VARIANTS:
            raise ValueError("variant must be one of %s, got %r." % (VARIANTS, variant))
        if frequency not in FREQUENCY_RULES:
            raise ValueError("frequency must be one of %s, got %r." % (FREQUENCY_RULES, frequency))
        if not nu0 > 0:
            raise ValueError("nu0 must be positive, got %r." % (nu0,))
        if not B > 0:
            raise ValueError("B must be positive, got %r." % (B,))
        if variant == "Binary" and operator is None:
            raise ValueError("Binary collisions need a spectral operator.")
        self.variant = variant
        self.frequency = frequency
        self.nu0 = float(nu0)
        self.B = float(B)
        self.operator = operator

    @property
    def is_binary(self):
        return self.variant == "Binary"

    def __repr__(self):
        return "CollisionModel(variant=%r, frequency=%r, nu0=%g)" % (self.variant, self.frequency, self.nu0)


def collision_frequency(m, model):
    """
    Collision frequency of a cell.

    Parameters
    ----------
    m: Moments
        Moments of the cell.
    model: CollisionModel
        Collision model holding the frequency rule.

    Returns
    -------
    float
        nu > 0.
    """
    if not m.rho > 0:
        raise NonPhysicalStateError("Collision frequency needs rho > 0, got %r" % (m.rho,))
    if model.frequency == "constant":
        return model.nu0
    if model.frequency == "4pi_rho":
        return 4.0 * np.pi * m.rho
    return 2.0 * np.pi * m.rho


def bgk_operator(f_values, nu, grid, tol=1e-12, maxwellian=None):
    """
    BGK relaxation nu (M[f] - f), without the 1/eps factor.

    Parameters
    ----------
    f_values: np.ndarray
        Distribution on the grid.
    nu: float
        Collision frequency.
    grid: VelocityGrid
        Velocity grid.
    tol: float
        Newton tolerance of the discrete Maxwellian.
    maxwellian: np.ndarray
        Precomputed M[f], skips the Newton solve.

    Returns
    -------
    np.ndarray
        Relaxation term.
    """
    if maxwellian is None:
        _, maxwellian = discrete_maxwellian(f_values, grid, tol=tol)
    return nu * (maxwellian - f_values)


def collision_rhs(f_values, grid, model, tol=1e-12):
    """
    Collision term Q of a cell: BGK relaxation or corrected spectral collisions.
    """
    if model.is_binary:
        return corrected_collision(f_values, grid, model.operator, tol=tol)
    nu = collision_frequency(moments(f_values, grid), model)
    return bgk_operator(f_values, nu, grid, tol=tol)
