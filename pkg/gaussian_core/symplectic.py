"""
Symplectic spectra, partial transposition and physicality checks.

Closed forms are used for the symmetric two-mode family; every other
covariance matrix goes through the numeric path, which diagonalizes the
Hermitian matrix i V^{1/2} Omega V^{1/2} (similar to i Omega V).
"""
import math

import numpy as np

from gaussian_core.entropy import f_entropy
from gaussian_core.states import (
    GeneralCM,
    PhysicalityReport,
    SymmetricTwoModeCM,
    SymplecticSpectrum,
    VACUUM_VARIANCE,
)
from utils.config_manager import get_tolerance
from utils.errors import ConvergenceError, InvalidState

# Mode orders of the four-mode optomechanical state.
# The block layout groups mechanics first (m1, m2, o1, o2); the cavity layout
# keeps each cavity together (m1, o1, m2, o2). The permutation is an involution.
BLOCK_MODE_ORDER = ("m1", "m2", "o1", "o2")
CAVITY_MODE_ORDER = ("m1", "o1", "m2", "o2")
BLOCK_TO_CAVITY = (0, 2, 1, 3)
CAVITY_TO_BLOCK = (0, 2, 1, 3)


def symplectic_form(n):
    """Per-mode symplectic form Omega = diag(J, ..., J), J = [[0, 1], [-1, 0]].

    Args:
        n: Number of modes

    Returns:
        np.ndarray: 2n x 2n matrix
    """
    return np.kron(np.eye(int(n)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def reorder_modes(cm, order):
    """Permute the modes of a covariance matrix.

    Args:
        cm: GeneralCM
        order: Sequence of old mode indices, listed in the new order

    Returns:
        GeneralCM with mode i of the result equal to mode order[i] of the input
    """
    if sorted(order) != list(range(cm.n_modes)):
        raise InvalidState(f"{order} is not a permutation of {cm.n_modes} modes")
    return cm.submatrix(order)


def partial_transpose(cm, mode=1):
    """Flip the sign of one mode's Y quadrature.

    Args:
        cm: GeneralCM
        mode: Index of the transposed mode

    Returns:
        GeneralCM
    """
    flip = np.ones(2 * cm.n_modes)
    flip[2 * mode + 1] = -1.0
    return GeneralCM(cm.entries * np.outer(flip, flip))


def symplectic_eigs_symmetric(cm, tol=None):
    """Symplectic eigenvalues of a symmetric two-mode state.

    eta_pm^2 = (Delta +- sqrt(Delta^2 - 4 det V)) / 2 with
    Delta = det S1 + det S2 + 2 det K = 2(s^2 - k^2) and det V = (s^2 - k^2)^2,
    so the spectrum is degenerate at sqrt(s^2 - k^2).

    Args:
        cm: SymmetricTwoModeCM
        tol: Physicality slack (default from config)

    Returns:
        SymplecticSpectrum
    """
    if tol is None:
        tol = get_tolerance("physical")
    cm.check_physical(tol)
    # accepted states sit at or above the vacuum floor
    d = max(cm.reduced_det, 0.25)
    delta = 2.0 * d
    det_v = d * d
    root = math.sqrt(max(delta * delta - 4.0 * det_v, 0.0))
    eta_plus = math.sqrt((delta + root) / 2.0)
    eta_minus = math.sqrt((delta - root) / 2.0)
    return SymplecticSpectrum(eta_plus, eta_minus)


def pt_min_symplectic_eig(cm, tol=None):
    """Smallest symplectic eigenvalue of the partially transposed state.

    With Delta~ = 2(s^2 + k^2) the general two-mode expression reduces to
    s - |k|, which is returned directly (no cancellation for nearly pure states).

    Args:
        cm: SymmetricTwoModeCM
        tol: Physicality slack (default from config)

    Returns:
        float: theta~_- > 0
    """
    if tol is None:
        tol = get_tolerance("physical")
    cm.check_physical(tol)
    return cm.s - abs(cm.k)


def _matrix_sqrt(m):
    w, u = np.linalg.eigh(m)
    return (u * np.sqrt(w)) @ u.T


def symplectic_eigs_numeric(cm, residual_tol=None):
    """Symplectic eigenvalues of an arbitrary positive definite covariance matrix.

    Args:
        cm: GeneralCM
        residual_tol: Eigensolve residual bound (default from config)

    Returns:
        list[float]: The n symplectic eigenvalues, sorted descending
    """
    if residual_tol is None:
        residual_tol = get_tolerance("eigensolve_residual")
    if not cm.is_positive_definite():
        raise InvalidState("The covariance matrix is not positive definite.")

    n = cm.n_modes
    root = _matrix_sqrt(cm.entries)
    h = 1j * (root @ symplectic_form(n) @ root)
    h = (h + h.conj().T) / 2
    w, u = np.linalg.eigh(h)

    scale = max(1.0, float(np.max(np.abs(h))))
    residual = float(np.max(np.abs(h @ u - u * w)))
    # eigenvalues come in +-eta pairs; match each positive one with its partner
    positive = w[n:][::-1]
    negative = -w[:n]
    pairing = float(np.max(np.abs(positive - negative)))
    if residual > residual_tol * scale or pairing > residual_tol * scale:
        raise ConvergenceError(
            f"Symplectic eigensolve residual {residual:.3g} (pairing {pairing:.3g}) "
            f"exceeds {residual_tol:.3g}"
        )
    return [float(v) for v in (positive + negative) / 2]


def validate_physical(cm, tol=None):
    """Check the uncertainty relation through the smallest symplectic eigenvalue.

    Never raises for a symmetric matrix: unphysical or indefinite input yields
    a report with is_physical False.

    Args:
        cm: GeneralCM
        tol: Relative slack below 1/2, scaled by the squared largest entry
            (default from config)

    Returns:
        PhysicalityReport
    """
    if tol is None:
        tol = get_tolerance("physical")
    if not cm.is_positive_definite():
        spectrum = np.linalg.eigvals(1j * symplectic_form(cm.n_modes) @ cm.entries)
        return PhysicalityReport(False, float(np.min(np.abs(spectrum))))
    min_eig = symplectic_eigs_numeric(cm)[-1]
    slack = tol * max(1.0, float(np.max(np.abs(cm.entries))) ** 2)
    return PhysicalityReport(min_eig >= VACUUM_VARIANCE - slack, min_eig)


def von_neumann_entropy(cm):
    """Entropy (nats) of a Gaussian state, the sum of f over its symplectic spectrum."""
    if isinstance(cm, SymmetricTwoModeCM):
        spectrum = symplectic_eigs_symmetric(cm)
        return f_entropy(spectrum.eta_plus) + f_entropy(spectrum.eta_minus)
    return sum(f_entropy(eta) for eta in symplectic_eigs_numeric(cm))
