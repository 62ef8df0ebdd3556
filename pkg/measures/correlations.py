"""
Correlation measures of symmetric two-mode Gaussian states (all in nats).

Every measure accepts a SymmetricTwoModeCM, or a 4x4 GeneralCM of the same
family, and checks physicality first.
"""
import enum
from dataclasses import dataclass

import numpy as np

from gaussian_core.entropy import f_entropy
from gaussian_core.states import GeneralCM, SymmetricTwoModeCM
from gaussian_core.symplectic import pt_min_symplectic_eig, symplectic_eigs_symmetric
from model.steady_state import closed_form_blocks, mechanical_subsystem, optical_subsystem
from utils import event_log
from utils.config_manager import get_tolerance
from utils.errors import BranchError, ConvergenceError, InvalidParameter


class SubsystemKind(enum.Enum):
    """The two bipartite subsystems: both mirrors, or both cavity fields."""
    MECHANICAL = "mechanical"
    OPTICAL = "optical"

    @property
    def short(self):
        """Column suffix used in CSV headers."""
        return "mech" if self is SubsystemKind.MECHANICAL else "opt"

    @classmethod
    def parse(cls, label):
        """Accept 'mech', 'mechanical', 'opt' or 'optical'."""
        for kind in cls:
            if label in (kind.value, kind.short):
                return kind
        raise InvalidParameter(f"Unknown subsystem '{label}', expected mech or opt")


@dataclass(frozen=True)
class MeasureTriple:
    eof: float
    gqd: float
    qc: float

    def as_dict(self):
        return {"eof": self.eof, "gqd": self.gqd, "qc": self.qc}


def _as_symmetric(cm):
    if isinstance(cm, GeneralCM):
        return SymmetricTwoModeCM.from_matrix(cm)
    return cm


def quantum_coherence(cm):
    """Relative-entropy coherence -f(eta+) - f(eta-) + 2 f(s).

    Args:
        cm: Physical symmetric two-mode state

    Returns:
        float
    """
    cm = _as_symmetric(cm)
    spectrum = symplectic_eigs_symmetric(cm)
    return -f_entropy(spectrum.eta_plus) - f_entropy(spectrum.eta_minus) + 2.0 * f_entropy(cm.s)


def eof(cm, squared_denominator=False):
    """Entanglement of formation from the smallest PT symplectic eigenvalue theta.

    Zero when theta >= 1/2, otherwise f((theta^2 + 1/4) / (2 theta)).

    Args:
        cm: Physical symmetric two-mode state
        squared_denominator: Divide by 2 theta^2 instead of 2 theta. That variant
            jumps to f(1) at the separability boundary and is kept only as a
            negative control for the verification suite.

    Returns:
        float
    """
    cm = _as_symmetric(cm)
    theta = pt_min_symplectic_eig(cm)
    if theta >= 0.5:
        return 0.0
    denominator = 2.0 * theta * theta if squared_denominator else 2.0 * theta
    return f_entropy((theta * theta + 0.25) / denominator)


def gqd(cm):
    """Gaussian quantum discord f(s) - f(eta+) - f(eta-) + f(Phi).

    Phi = s - 2 k^2 / (1 + 2 s), evaluated as (s + 2 (s^2 - k^2)) / (1 + 2 s), is the
    optimal-measurement term of the det K <= 0 branch; the other branch is not
    implemented.

    Args:
        cm: Physical symmetric two-mode state, or a 4x4 GeneralCM

    Returns:
        float
    """
    if isinstance(cm, GeneralCM):
        det_k = float(np.linalg.det(cm.block(0, 1)))
        if det_k > 0:
            raise BranchError(f"Discord is only implemented for det K <= 0, got {det_k:.6g}")
        cm = SymmetricTwoModeCM.from_matrix(cm)
    if cm.det_cross > 0:
        raise BranchError(f"Discord is only implemented for det K <= 0, got {cm.det_cross:.6g}")

    spectrum = symplectic_eigs_symmetric(cm)
    s = cm.s
    phi = (s + 2.0 * max(cm.reduced_det, 0.25)) / (1.0 + 2.0 * s)
    return f_entropy(s) - f_entropy(spectrum.eta_plus) - f_entropy(spectrum.eta_minus) + f_entropy(phi)


def _clamp(name, value, clamp):
    if value < 0:
        if value < -clamp:
            raise ConvergenceError(f"{name} evaluated to {value:.3g}, below the rounding floor")
        return 0.0
    return value


def measure_triple(cm, squared_denominator=False):
    """All three measures of one state, with rounding noise below zero clamped.

    Args:
        cm: Physical symmetric two-mode state
        squared_denominator: Forwarded to eof

    Returns:
        MeasureTriple
    """
    clamp = get_tolerance("measure_clamp")
    cm = _as_symmetric(cm)
    return MeasureTriple(
        eof=_clamp("eof", eof(cm, squared_denominator), clamp),
        gqd=_clamp("gqd", gqd(cm), clamp),
        qc=_clamp("qc", quantum_coherence(cm), clamp),
    )


def subsystem_cm(blocks, kind):
    """Reduced state of one subsystem from ClosedFormBlocks."""
    if kind is SubsystemKind.MECHANICAL:
        return mechanical_subsystem(blocks)
    return optical_subsystem(blocks)


def subsystem_measures(p, kind, squared_denominator=False):
    """Measures of the mechanical or optical pair at one parameter point.

    Args:
        p: SystemParams
        kind: SubsystemKind
        squared_denominator: Forwarded to eof

    Returns:
        MeasureTriple
    """
    cm = subsystem_cm(closed_form_blocks(p), kind)
    triple = measure_triple(cm, squared_denominator)
    event_log.log_event("measure_evaluated", subsystem=kind.short, coop=p.coop,
                        squeeze=p.squeeze, nth=p.nth, **triple.as_dict())
    return triple


def both_subsystems(p, squared_denominator=False):
    """Measures of both pairs, keyed by SubsystemKind in (mechanical, optical) order."""
    return {kind: subsystem_measures(p, kind, squared_denominator) for kind in SubsystemKind}
