"""
Frequency-domain evaluation of single covariance entries.

In the frequency domain the fluctuations obey x(w) = M(w) xi(w) with
M(w) = (-i w I - A)^-1, so the stationary covariance is

    V = (1 / 2 pi) * integral of Re[M(w) D M(w)^H] dw  over the real line.

The infinite range is mapped onto (-1, 1) with w = t / (1 - t^2). All modes
resonate at w = 0 in the rotating frame, which is passed to quad as a
breakpoint.
"""
import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from gaussian_core.symplectic import BLOCK_TO_CAVITY
from oracle.dynamics import diffusion_matrix, drift_matrix
from utils import event_log
from utils.config_manager import get_tolerance
from utils.errors import ConvergenceError, InvalidParameter

# Covariance entries addressable by name, as (row, column) in the block layout (m1, m2, o1, o2)
ELEMENTS = {
    "V1": (0, 0),
    "V13": (0, 2),
    "V15": (0, 4),
    "V17": (0, 6),
    "V2": (4, 4),
    "V57": (4, 6),
}

QUADRATURE_LIMIT = 1000


def _cavity_index(block_index):
    mode, quad_ = divmod(block_index, 2)
    return 2 * BLOCK_TO_CAVITY[mode] + quad_


def spectral_density(a, d, omega):
    """Spectral matrix M(w) D M(w)^H of the fluctuations at frequency omega.

    Args:
        a: DriftMatrix
        d: DiffusionMatrix
        omega: Angular frequency in units of kappa

    Returns:
        np.ndarray: Hermitian complex matrix
    """
    am = a.entries
    m = np.linalg.inv(-1j * omega * np.eye(am.shape[0]) - am)
    return m @ d.entries @ m.conj().T


def spectral_cm_element(p, which, tol=None):
    """One steady-state covariance entry by adaptive quadrature over frequency.

    Args:
        p: SystemParams
        which: Element name, one of ELEMENTS
        tol: Absolute quadrature tolerance (default from config)

    Returns:
        float
    """
    if which not in ELEMENTS:
        raise InvalidParameter(f"Unknown element '{which}', expected one of {sorted(ELEMENTS)}")
    if tol is None:
        tol = get_tolerance("spectral_quadrature")

    row, col = (_cavity_index(i) for i in ELEMENTS[which])
    a, d = drift_matrix(p), diffusion_matrix(p)

    def integrand(t):
        u = 1.0 - t * t
        value = spectral_density(a, d, t / u)[row, col].real
        return value * (1.0 + t * t) / (u * u)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(integrand, -1.0, 1.0, points=[0.0],
                                 epsabs=tol, epsrel=0.0, limit=QUADRATURE_LIMIT)
        except IntegrationWarning as e:
            raise ConvergenceError(f"Quadrature for {which} did not converge: {e}") from e

    if abserr > tol:
        raise ConvergenceError(f"Quadrature error {abserr:.3g} for {which} exceeds {tol:.3g}")

    result = value / (2.0 * math.pi)
    event_log.log_event("oracle_spectral_element", element=which, value=result, abserr=abserr)
    return result
