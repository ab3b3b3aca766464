"""Shared generators for randomized tests."""

import math

import numpy as np

from riemannian_consensus.consensus import NetworkState, gradient, gradient_norm, step


def ball_points(m, n, rng, radius_frac=0.9, center=None):
    """n points within radius_frac * r* of a random center (radius 2 if r* is infinite)."""
    c = m.random_point(rng) if center is None else center
    radius = radius_frac * (m.r_star if math.isfinite(m.r_star) else 2.0)
    pts = []
    for _ in range(n):
        v = m.random_tangent(c, 1.0, rng)
        pts.append(m.exp(c, v * radius * rng.random() / m.norm(c, v)))
    return c, np.stack(pts)


def descend(g, s, eps, grad_tol=1e-10, max_iter=5000):
    """Bare iteration without diagnostics; returns (final state, final gradient norm)."""
    for _ in range(max_iter):
        gn = gradient_norm(s, gradient(g, s))
        if gn < grad_tol:
            return s, gn
        s = step(g, s, eps)
    return s, gradient_norm(s, gradient(g, s))


def initial(m, points):
    return NetworkState.initial(m, points)
