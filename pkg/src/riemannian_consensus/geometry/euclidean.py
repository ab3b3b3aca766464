import math

import numpy as np

from .base import Manifold


class Euclidean(Manifold):
    """R^n with the standard inner product. Points are vectors of shape (n,)."""

    delta = 0.0
    Delta = 0.0
    inj = math.inf

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("Euclidean space needs n >= 1")
        self.n = n
        self.dim = n
        self.shape = (n,)
        self.name = f"R^{n}"

    def exp(self, x, v):
        self._check_shapes(x, v)
        return np.asarray(x, dtype=float) + v

    def log(self, x, y):
        self._check_shapes(x, y)
        return np.asarray(y, dtype=float) - x

    def dist(self, x, y):
        self._check_shapes(x, y)
        return float(np.linalg.norm(np.asarray(y, dtype=float) - x))

    def project(self, x, a):
        return np.array(a, dtype=float)

    def random_tangent(self, x, sigma, rng):
        return sigma * rng.standard_normal(self.shape)

    def base_point(self):
        return np.zeros(self.shape)

    def random_point(self, rng):
        return rng.standard_normal(self.shape)
