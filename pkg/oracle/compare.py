"""
Comparison of the closed-form blocks against an oracle steady state.
"""
from dataclasses import dataclass, field

import numpy as np

from gaussian_core.states import SymmetricTwoModeCM
from utils.config_manager import get_tolerance

# Positions of the diagonal and cross entries inside a 4x4 pair block
_POSITIONS = {
    "diag": [(0, 0), (1, 1), (2, 2), (3, 3)],
    "cross": [(0, 2), (2, 0), (1, 3), (3, 1)],
}


@dataclass(frozen=True)
class CMComparison:
    """Max-abs deviation per closed-form entry.

    Attributes:
        deviations: Deviation for V1, V13, V2 and V57
        structure: Largest entry of the two pair blocks that should vanish
        tol: Pass threshold
    """
    deviations: dict = field(default_factory=dict)
    structure: float = 0.0
    tol: float = 0.0

    @property
    def max_deviation(self):
        return max([self.structure, *self.deviations.values()])

    @property
    def passed(self):
        return self.max_deviation < self.tol or self.max_deviation == 0.0

    def as_dict(self):
        return {
            "deviations": dict(self.deviations),
            "structure": self.structure,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
            "passed": self.passed,
        }


def _block_deviation(expected, actual):
    diff = np.abs(actual - expected.to_matrix())
    diag = max(diff[idx] for idx in _POSITIONS["diag"])
    cross = max(diff[idx] for idx in _POSITIONS["cross"])
    mask = np.ones((4, 4), dtype=bool)
    for positions in _POSITIONS.values():
        for idx in positions:
            mask[idx] = False
    return float(diag), float(cross), float(np.max(diff[mask]))


def compare_cm(closed, oracle, tol=None):
    """Compare ClosedFormBlocks with a LyapunovSolution in the block layout.

    Args:
        closed: ClosedFormBlocks
        oracle: LyapunovSolution whose cm is ordered (m1, m2, o1, o2)
        tol: Pass threshold on every deviation (default from config)

    Returns:
        CMComparison
    """
    if tol is None:
        tol = get_tolerance("oracle_match")
    m = oracle.cm.entries
    v1, v13, mech_rest = _block_deviation(SymmetricTwoModeCM(closed.v1, closed.v13), m[:4, :4])
    v2, v57, opt_rest = _block_deviation(SymmetricTwoModeCM(closed.v2, closed.v57), m[4:, 4:])
    return CMComparison(
        deviations={"V1": v1, "V13": v13, "V2": v2, "V57": v57},
        structure=max(mech_rest, opt_rest),
        tol=tol,
    )
