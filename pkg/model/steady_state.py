"""
Steady-state covariance matrix of the double-cavity system.

The mechanical pair (m1, m2) and the optical pair (o1, o2) are each a
symmetric squeezed thermal state whose entries have closed forms:

    V1  = [kappa C cosh 2r + (1 + 2 n_th)(kappa + gamma + gamma C)] / D
    V13 = kappa C sinh 2r / D
    V2  = [(kappa + gamma + kappa C) cosh 2r + (1 + 2 n_th) gamma C] / D
    V57 = (kappa + gamma + kappa C) sinh 2r / D

with D = 2 (kappa + gamma)(1 + C). The optomechanical cross blocks V15, V17
have no closed form here and come from the Lyapunov oracle.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from gaussian_core.states import GeneralCM, SymmetricTwoModeCM
from utils import event_log
from utils.config_manager import get_tolerance


@dataclass(frozen=True)
class ClosedFormBlocks:
    """Entries of the mechanical (v1, v13) and optical (v2, v57) sub-matrices."""
    v1: float
    v13: float
    v2: float
    v57: float

    def as_dict(self):
        return {"V1": self.v1, "V13": self.v13, "V2": self.v2, "V57": self.v57}


def closed_form_blocks(p, kappa=1.0):
    """Evaluate the closed-form blocks.

    Only gamma/kappa enters, so any kappa gives the same result up to rounding.

    Args:
        p: SystemParams
        kappa: Cavity decay rate used for the evaluation

    Returns:
        ClosedFormBlocks
    """
    gamma = p.damping_ratio * kappa
    c = p.coop
    thermal = 1.0 + 2.0 * p.nth
    cosh2r = math.cosh(2.0 * p.squeeze)
    sinh2r = math.sinh(2.0 * p.squeeze)
    denom = 2.0 * (kappa + gamma) * (1.0 + c)

    v1 = (kappa * c * cosh2r + thermal * (kappa + gamma + gamma * c)) / denom
    v13 = kappa * c * sinh2r / denom
    v2 = ((kappa + gamma + kappa * c) * cosh2r + thermal * gamma * c) / denom
    v57 = (kappa + gamma + kappa * c) * sinh2r / denom
    return ClosedFormBlocks(v1, v13, v2, v57)


def mechanical_subsystem(b):
    """Mechanical pair (s = V1, k = V13), checked for physicality."""
    return SymmetricTwoModeCM(b.v1, b.v13).check_physical(get_tolerance("physical"))


def optical_subsystem(b):
    """Optical pair (s = V2, k = V57), checked for physicality."""
    return SymmetricTwoModeCM(b.v2, b.v57).check_physical(get_tolerance("physical"))


@lru_cache(maxsize=1024)
def oracle_cross_blocks(p):
    """Optomechanical cross entries (V15, V17) from the Lyapunov steady state.

    V15 correlates X_m1 with X_o1 and V17 correlates X_m1 with X_o2.

    Args:
        p: SystemParams (hashable, so results are cached)

    Returns:
        tuple[float, float]
    """
    from oracle.dynamics import steady_state_cm

    solution = steady_state_cm(p)
    event_log.log_event("model_cross_blocks_solved", coop=p.coop, squeeze=p.squeeze,
                        nth=p.nth, residual=solution.residual)
    m = solution.cm.entries
    return float(m[0, 4]), float(m[0, 6])


def _pattern(a, b):
    return SymmetricTwoModeCM(a, b).to_matrix()


def full_cm(p):
    """Full 8x8 covariance matrix in the block layout (m1, m2, o1, o2).

    Args:
        p: SystemParams

    Returns:
        GeneralCM
    """
    blocks = closed_form_blocks(p)
    v15, v17 = oracle_cross_blocks(p)
    cross = _pattern(v15, v17)
    matrix = np.block([
        [_pattern(blocks.v1, blocks.v13), cross],
        [cross.T, _pattern(blocks.v2, blocks.v57)],
    ])
    return GeneralCM(matrix)
