"""
Physical parameters of the double-cavity optomechanical system.

Two identical cavities, each with a movable mirror, share a two-mode squeezed
input and are driven at the red sideband. Only four dimensionless numbers
enter the steady state: cooperativity C, squeezing r, thermal occupation n_th
and the damping ratio gamma/kappa. RawCavityParams converts a laboratory
parameter set into the cooperativity.
"""
import dataclasses
import logging
import math
import numbers
from dataclasses import dataclass

from scipy import constants

from utils import event_log
from utils.errors import DomainError, InvalidParameter

# Advisory bound for omega_M/gamma (Markovian bath) and omega_M/kappa (resolved sideband)
ADVISORY_RATIO = 10.0

SWEEPABLE_FIELDS = ("nth", "coop", "squeeze", "damping_ratio")


def _require_finite(name, value):
    if not isinstance(value, numbers.Real) or isinstance(value, bool) or not math.isfinite(value):
        raise InvalidParameter(f"{name} must be a finite number, got {value!r}")


@dataclass(frozen=True)
class SystemParams:
    """Dimensionless configuration of the system.

    Attributes:
        coop: Optomechanical cooperativity C >= 0
        squeeze: Squeezing parameter r >= 0
        nth: Mean thermal phonon number n_th >= 0
        damping_ratio: gamma/kappa > 0
    """
    coop: float
    squeeze: float
    nth: float
    damping_ratio: float

    def __post_init__(self):
        for name in ("coop", "squeeze", "nth", "damping_ratio"):
            _require_finite(name, getattr(self, name))
        for name in ("coop", "squeeze", "nth"):
            if getattr(self, name) < 0:
                raise InvalidParameter(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.damping_ratio <= 0:
            raise InvalidParameter(f"damping_ratio must be > 0, got {self.damping_ratio}")

    @property
    def kappa(self):
        """Cavity decay rate; all rates are in units of kappa."""
        return 1.0

    @property
    def gamma(self):
        return self.damping_ratio * self.kappa

    @property
    def coupling(self):
        """Effective coupling G = sqrt(C gamma kappa) / 2."""
        return math.sqrt(self.coop * self.gamma * self.kappa) / 2.0

    def with_value(self, field_name, value):
        """Copy with one field replaced (used by sweeps)."""
        if field_name not in SWEEPABLE_FIELDS:
            raise InvalidParameter(f"Unknown parameter '{field_name}'")
        return dataclasses.replace(self, **{field_name: float(value)})

    def as_dict(self):
        return dataclasses.asdict(self)

    @classmethod
    def from_raw(cls, raw, squeeze, nth):
        """Build the dimensionless set from laboratory parameters.

        Args:
            raw: RawCavityParams
            squeeze: Squeezing parameter r
            nth: Thermal occupation of the mechanical baths

        Returns:
            SystemParams
        """
        return cls(coop=cooperativity_from_raw(raw), squeeze=float(squeeze), nth=float(nth),
                   damping_ratio=raw.gamma / raw.kappa)


@dataclass(frozen=True)
class RawCavityParams:
    """Laboratory parameters of one (of two identical) cavities, SI units.

    Attributes:
        mass: Mirror mass mu (kg)
        length: Cavity length L (m)
        omega_a: Cavity frequency (rad/s)
        omega_M: Mechanical frequency (rad/s)
        omega_L: Laser frequency (rad/s)
        power: Pump power P (W); zero means an undriven cavity
        kappa: Cavity decay rate (rad/s)
        gamma: Mechanical damping rate (rad/s)
    """
    mass: float
    length: float
    omega_a: float
    omega_M: float
    omega_L: float
    power: float
    kappa: float
    gamma: float

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            _require_finite(f.name, value)
            if f.name == "power":
                if value < 0:
                    raise DomainError(f"power must be >= 0, got {value}")
            elif value <= 0:
                raise DomainError(f"{f.name} must be > 0, got {value}")

    def advisories(self):
        """Return the modelling assumptions this parameter set strains.

        Returns:
            list[str]: Empty when omega_M/gamma and omega_M/kappa are both large
        """
        notes = []
        if self.omega_M / self.gamma < ADVISORY_RATIO:
            notes.append(f"mechanical quality factor omega_M/gamma={self.omega_M / self.gamma:.3g} "
                         "is not large; the Markovian bath assumption is questionable")
        if self.omega_M / self.kappa < ADVISORY_RATIO:
            notes.append(f"omega_M/kappa={self.omega_M / self.kappa:.3g} is not large; "
                         "the rotating-wave approximation is questionable")
        for note in notes:
            event_log.log_event("model_advisory", level=logging.WARNING, note=note)
        return notes


def input_noise(squeeze):
    """Occupation and cross-correlation of the squeezed input, (N, M) = (sinh^2 r, sinh r cosh r)."""
    return math.sinh(squeeze) ** 2, math.sinh(squeeze) * math.cosh(squeeze)


def thermal_occupation(omega_m, temperature):
    """Bose occupation n_th = 1 / (exp(hbar omega_M / k_B T) - 1) of the mechanical bath.

    Args:
        omega_m: Mechanical frequency (rad/s)
        temperature: Bath temperature (K); 0 gives n_th = 0

    Returns:
        float
    """
    _require_finite("omega_m", omega_m)
    _require_finite("temperature", temperature)
    if omega_m <= 0 or temperature < 0:
        raise InvalidParameter("omega_m must be > 0 and temperature >= 0")
    if temperature == 0:
        return 0.0
    return 1.0 / math.expm1(constants.hbar * omega_m / (constants.k * temperature))


def single_photon_coupling(raw):
    """g = (omega_a / L) sqrt(hbar / (mu omega_M))."""
    return raw.omega_a / raw.length * math.sqrt(constants.hbar / (raw.mass * raw.omega_M))


def intracavity_amplitude(raw):
    """Steady-state |a| at red-sideband detuning Delta' = -omega_M.

    |a| = epsilon / sqrt((kappa/2)^2 + omega_M^2) with epsilon = sqrt(2 kappa P / (hbar omega_L)).
    """
    epsilon = math.sqrt(2.0 * raw.kappa * raw.power / (constants.hbar * raw.omega_L))
    return epsilon / math.sqrt((raw.kappa / 2.0) ** 2 + raw.omega_M ** 2)


def effective_coupling(raw):
    """G = g |a|."""
    return single_photon_coupling(raw) * intracavity_amplitude(raw)


def cooperativity(coupling, gamma, kappa):
    """C = 4 G^2 / (gamma kappa)."""
    if gamma <= 0 or kappa <= 0:
        raise InvalidParameter("gamma and kappa must be > 0")
    return 4.0 * coupling ** 2 / (gamma * kappa)


def cooperativity_from_raw(raw):
    """Cooperativity of a laboratory parameter set.

    Equals 8 omega_a^2 P / (mu gamma omega_M omega_L L^2 [(kappa/2)^2 + omega_M^2]).

    Args:
        raw: RawCavityParams

    Returns:
        float: C >= 0
    """
    raw.advisories()
    return cooperativity(effective_coupling(raw), raw.gamma, raw.kappa)
