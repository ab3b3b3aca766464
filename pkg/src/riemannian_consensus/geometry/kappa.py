"""The curvature-dependent trigonometric functions S_k and C_k."""

import math


def s_kappa(kappa: float, t: float) -> float:
    """sin(sqrt(k) t)/sqrt(k) for k > 0, t for k = 0, sinh(sqrt(-k) t)/sqrt(-k) for k < 0."""
    if kappa > 0:
        r = math.sqrt(kappa)
        return math.sin(r * t) / r
    if kappa < 0:
        r = math.sqrt(-kappa)
        return math.sinh(r * t) / r
    return float(t)


def c_kappa(kappa: float, t: float) -> float:
    """cos(sqrt(k) t) for k > 0, 1 for k = 0, cosh(sqrt(-k) t) for k < 0."""
    if kappa > 0:
        return math.cos(math.sqrt(kappa) * t)
    if kappa < 0:
        return math.cosh(math.sqrt(-kappa) * t)
    return 1.0
