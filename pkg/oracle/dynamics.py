"""
Linearized dynamics of the two cavities at the red sideband.

Matrices are built in the cavity layout (m1, o1, m2, o2), quadratures (X, Y)
per mode. Per cavity the beam-splitter coupling reads

    dX_m/dt = -(gamma/2) X_m + G X_o
    dX_o/dt = -(kappa/2) X_o - G X_m

and identically for Y. The cavities share no drift; they are correlated only
through the two-mode squeezed input noise.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag, solve_continuous_lyapunov

from gaussian_core.states import GeneralCM
from gaussian_core.symplectic import CAVITY_TO_BLOCK, reorder_modes
from model.params import input_noise
from utils import event_log
from utils.config_manager import get_tolerance
from utils.errors import ConvergenceError, InvalidState, SingularSystemError

# Quadrature indices in the cavity layout
XM1, YM1, XO1, YO1, XM2, YM2, XO2, YO2 = range(8)


@dataclass(frozen=True, eq=False)
class DriftMatrix:
    """8x8 drift matrix in units of kappa."""
    entries: np.ndarray = field(repr=False)


@dataclass(frozen=True, eq=False)
class DiffusionMatrix:
    """Symmetric 8x8 diffusion matrix in units of kappa."""
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.entries
        if np.max(np.abs(m - m.T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
            raise InvalidState("Diffusion matrix is not symmetric")


@dataclass(frozen=True)
class LyapunovSolution:
    """Steady state V of A V + V A^T + D = 0 and its max-abs residual."""
    cm: GeneralCM
    residual: float


def _cavity_block(p, faulty_drift=False):
    g = p.coupling
    gamma, kappa = p.gamma, p.kappa
    if faulty_drift:
        # wrong coupling row [[-gamma/2, G], [-kappa/2, -G]], unstable at C = 0
        core = np.array([[-gamma / 2, g], [-kappa / 2, -g]])
    else:
        core = np.array([[-gamma / 2, g], [-g, -kappa / 2]])
    block = np.zeros((4, 4))
    # (X_m, X_o) and (Y_m, Y_o) evolve with the same 2x2 core
    for quad in (0, 1):
        idx = np.ix_([quad, 2 + quad], [quad, 2 + quad])
        block[idx] = core
    return block


def drift_matrix(p, faulty_drift=False):
    """Drift matrix of both cavities.

    Args:
        p: SystemParams
        faulty_drift: Use the wrong coupling row in the core block
            (unstable at C = 0, used as a negative control)

    Returns:
        DriftMatrix
    """
    cavity = _cavity_block(p, faulty_drift)
    return DriftMatrix(block_diag(cavity, cavity))


def diffusion_matrix(p):
    """Diffusion matrix from the thermal and squeezed input noise.

    Args:
        p: SystemParams

    Returns:
        DiffusionMatrix
    """
    n_sq, m_sq = input_noise(p.squeeze)
    d = np.zeros((8, 8))
    mech = p.gamma / 2 * (2 * p.nth + 1)
    opt = p.kappa / 2 * (2 * n_sq + 1)
    for i in (XM1, YM1, XM2, YM2):
        d[i, i] = mech
    for i in (XO1, YO1, XO2, YO2):
        d[i, i] = opt
    d[XO1, XO2] = d[XO2, XO1] = p.kappa * m_sq
    d[YO1, YO2] = d[YO2, YO1] = -p.kappa * m_sq
    return DiffusionMatrix(d)


def spectral_abscissa(a):
    """Largest real part of the drift eigenvalues."""
    return float(np.max(np.linalg.eigvals(a.entries).real))


def solve_lyapunov(a, d, residual_tol=None):
    """Solve A V + V A^T + D = 0 through the vectorized 64x64 linear system.

    Args:
        a: DriftMatrix (must be stable)
        d: DiffusionMatrix
        residual_tol: Bound on max|A V + V A^T + D| (default from config)

    Returns:
        LyapunovSolution, in the same layout as a and d
    """
    if residual_tol is None:
        residual_tol = get_tolerance("lyapunov_residual")
    am, dm = a.entries, d.entries
    n = am.shape[0]

    abscissa = spectral_abscissa(a)
    if abscissa >= 0:
        raise SingularSystemError(f"Drift matrix is not stable (spectral abscissa {abscissa:.3g})")

    eye = np.eye(n)
    coef = np.kron(am, eye) + np.kron(eye, am)
    try:
        vec = np.linalg.solve(coef, -dm.reshape(-1))
    except np.linalg.LinAlgError as e:
        raise SingularSystemError(f"Vectorized Lyapunov system is singular: {e}") from e

    v = vec.reshape(n, n)
    v = (v + v.T) / 2
    residual = float(np.max(np.abs(am @ v + v @ am.T + dm)))
    if residual > residual_tol:
        raise ConvergenceError(f"Lyapunov residual {residual:.3g} exceeds {residual_tol:.3g}")
    return LyapunovSolution(GeneralCM(v), residual)


def lyapunov_cross_check(a, d):
    """Second, independent solve with scipy's Bartels-Stewart routine."""
    v = solve_continuous_lyapunov(a.entries, -d.entries)
    return GeneralCM((v + v.T) / 2)


def steady_state_cm(p, faulty_drift=False):
    """Steady state of the linearized dynamics in the block layout (m1, m2, o1, o2).

    Args:
        p: SystemParams
        faulty_drift: Forwarded to drift_matrix

    Returns:
        LyapunovSolution
    """
    solution = solve_lyapunov(drift_matrix(p, faulty_drift), diffusion_matrix(p))
    event_log.log_event("oracle_lyapunov_solved", coop=p.coop, squeeze=p.squeeze,
                        nth=p.nth, damping_ratio=p.damping_ratio, residual=solution.residual)
    return LyapunovSolution(reorder_modes(solution.cm, CAVITY_TO_BLOCK), solution.residual)
