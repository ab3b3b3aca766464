"""Karcher/Frechet mean by intrinsic gradient descent with unit step."""

from dataclasses import dataclass

import numpy as np

from .geometry import Manifold


@dataclass(frozen=True)
class FrechetConfig:
    max_iter: int = 1000
    tol: float = 1e-12
    init: np.ndarray | None = None  # None means start at the first point

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass
class FrechetResult:
    mean: np.ndarray
    iterations: int
    grad_norm: float
    converged: bool
    certified: bool  # all points within r* of the starting point


def frechet_mean(manifold: Manifold, points, cfg: FrechetConfig | None = None) -> FrechetResult:
    """Iterate x <- exp_x(mean_i log_x(u_i)) until the averaged log is below ``cfg.tol``.

    Uniqueness is only guaranteed when the points fit in an r*-ball; outside
    that regime the result is best-effort and ``certified`` is False.
    CutLocus from ``log`` propagates.
    """
    cfg = cfg or FrechetConfig()
    points = list(points)
    if not points:
        raise ValueError("frechet_mean of an empty set")
    x = np.array(points[0] if cfg.init is None else cfg.init, dtype=float)
    certified = max(manifold.dist(x, u) for u in points) < manifold.r_star
    n = len(points)
    gnorm = np.inf
    for it in range(cfg.max_iter + 1):
        w = sum(manifold.log(x, u) for u in points) / n
        gnorm = manifold.norm(x, w)
        if gnorm < cfg.tol:
            return FrechetResult(x, it, gnorm, True, certified)
        if it == cfg.max_iter:
            break
        x = manifold.exp(x, w)
    return FrechetResult(x, cfg.max_iter, gnorm, False, certified)


def frechet_variance(manifold: Manifold, points, center) -> float:
    """Sum of squared distances from ``center`` to the points."""
    return float(sum(manifold.dist(u, center) ** 2 for u in points))
