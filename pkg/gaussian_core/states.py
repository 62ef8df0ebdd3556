"""
Covariance matrix types.

Quadratures are ordered per mode, (X1, Y1, X2, Y2, ...), with vacuum variance 1/2.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from utils.errors import InvalidParameter, InvalidState, PhysicalityError

VACUUM_VARIANCE = 0.5
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SymmetricTwoModeCM:
    """Two-mode symmetric squeezed thermal state.

    The 4x4 matrix is [[s, 0, k, 0], [0, s, 0, -k], [k, 0, s, 0], [0, -k, 0, s]].

    Attributes:
        s: Diagonal variance of each mode
        k: Cross-correlation amplitude (signed)
    """
    s: float
    k: float

    def __post_init__(self):
        if not (math.isfinite(self.s) and math.isfinite(self.k)):
            raise InvalidParameter(f"Non-finite covariance entries s={self.s}, k={self.k}")

    @property
    def det_mode(self):
        """det S_j1 = det S_j2 = s^2."""
        return self.s * self.s

    @property
    def det_cross(self):
        """det K_j1j2 = -k^2."""
        return -self.k * self.k

    @property
    def reduced_det(self):
        """s^2 - k^2, computed as (s - |k|)(s + |k|) to avoid cancellation."""
        a = abs(self.k)
        return (self.s - a) * (self.s + a)

    def slack(self, tol):
        """Slack on s^2 - k^2 >= 1/4; rounding in s^2 - k^2 grows like s^2."""
        return tol * max(1.0, self.s * self.s)

    def is_physical(self, tol=1e-12):
        return self.s > 0 and abs(self.k) < self.s and self.reduced_det >= 0.25 - self.slack(tol)

    def check_physical(self, tol=1e-12):
        """Raise PhysicalityError unless the state satisfies the uncertainty relation.

        Args:
            tol: Relative slack on s^2 - k^2 >= 1/4, scaled by max(1, s^2)

        Returns:
            self, so the call can be chained
        """
        if self.s <= 0:
            raise PhysicalityError(f"Variance s={self.s} must be positive")
        if abs(self.k) >= self.s:
            raise PhysicalityError(f"|k|={abs(self.k)} must be smaller than s={self.s}")
        if self.reduced_det < 0.25 - self.slack(tol):
            raise PhysicalityError(
                f"s^2 - k^2 = {self.reduced_det:.6g} is below 1/4 (s={self.s}, k={self.k})"
            )
        return self

    def to_matrix(self):
        """Return the 4x4 covariance matrix as a numpy array."""
        s, k = self.s, self.k
        return np.array([
            [s, 0.0, k, 0.0],
            [0.0, s, 0.0, -k],
            [k, 0.0, s, 0.0],
            [0.0, -k, 0.0, s],
        ])

    def embed(self):
        """Return the state as a GeneralCM."""
        return GeneralCM(self.to_matrix())

    @classmethod
    def from_matrix(cls, matrix, tol=1e-12):
        """Extract (s, k) from a 4x4 matrix of the symmetric squeezed-thermal family.

        Args:
            matrix: 4x4 array or GeneralCM
            tol: Absolute tolerance on the family structure

        Returns:
            SymmetricTwoModeCM
        """
        m = matrix.entries if isinstance(matrix, GeneralCM) else np.asarray(matrix, dtype=float)
        if m.shape != (4, 4):
            raise InvalidState(f"Expected a 4x4 matrix, got shape {m.shape}")
        candidate = cls(float(m[0, 0]), float(m[0, 2]))
        deviation = np.max(np.abs(candidate.to_matrix() - m))
        if deviation > tol:
            raise InvalidState(
                f"Matrix is not a symmetric squeezed thermal state (deviation {deviation:.3g})"
            )
        return candidate


def two_mode_squeezed_vacuum(r):
    """Pure two-mode squeezed vacuum, s = cosh(2r)/2 and k = sinh(2r)/2."""
    return SymmetricTwoModeCM(math.cosh(2 * r) / 2, math.sinh(2 * r) / 2)


def thermal_pair(nth):
    """Product of two identical thermal modes with occupation nth."""
    return SymmetricTwoModeCM((1 + 2 * nth) / 2, 0.0)


@dataclass(frozen=True, eq=False)
class GeneralCM:
    """Dense 2n x 2n covariance matrix in per-mode quadrature ordering.

    The array is copied and frozen on construction.
    """
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=float, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise InvalidState(f"Covariance matrix must be 2n x 2n, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidState("Covariance matrix has non-finite entries")
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(m))):
            raise InvalidState("The covariance matrix is not symmetric.")
        m.flags.writeable = False
        object.__setattr__(self, 'entries', m)

    @property
    def n_modes(self):
        return self.entries.shape[0] // 2

    def is_positive_definite(self):
        return bool(np.min(np.linalg.eigvalsh(self.entries)) > 0)

    def block(self, mode_a, mode_b):
        """Return the 2x2 block between two modes."""
        return self.entries[2 * mode_a:2 * mode_a + 2, 2 * mode_b:2 * mode_b + 2]

    def submatrix(self, modes):
        """Reduced covariance matrix of the listed modes, in the given order."""
        idx = [i for m in modes for i in (2 * m, 2 * m + 1)]
        return GeneralCM(self.entries[np.ix_(idx, idx)])

    @classmethod
    def vacuum(cls, n_modes):
        return cls(VACUUM_VARIANCE * np.eye(2 * n_modes))


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a two-mode covariance matrix."""
    eta_plus: float
    eta_minus: float

    def is_physical(self, tol=1e-12):
        return self.eta_minus >= VACUUM_VARIANCE - tol


@dataclass(frozen=True)
class PhysicalityReport:
    """Result of validate_physical."""
    is_physical: bool
    min_symplectic_eig: float

    def __bool__(self):
        return self.is_physical
