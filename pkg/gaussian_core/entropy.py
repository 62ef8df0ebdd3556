"""
The entropy function f(x) of a thermal mode with symplectic eigenvalue x.
"""
from scipy.special import xlogy

from utils.config_manager import get_tolerance
from utils.errors import DomainError


def f_entropy(x, clamp=None):
    """Von Neumann entropy of a single mode with symplectic eigenvalue x (nats).

    f(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), with f(1/2) = 0.

    Args:
        x: Symplectic eigenvalue, x >= 1/2
        clamp: Values in [1/2 - clamp, 1/2] are treated as 1/2 (default from config)

    Returns:
        float: f(x) >= 0
    """
    if clamp is None:
        clamp = get_tolerance("entropy_clamp")
    x = float(x)
    if x < 0.5:
        if x < 0.5 - clamp:
            raise DomainError(f"f(x) is undefined for x={x!r} < 1/2")
        x = 0.5
    return float(xlogy(x + 0.5, x + 0.5) - xlogy(x - 0.5, x - 0.5))
