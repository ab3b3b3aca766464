import math

import numpy as np

from ..errors import CutLocus
from .base import CUT_LOCUS_MARGIN, REORTHO_TOL, Manifold

# Below this angle theta/sin(theta) is replaced by its Taylor series.
_SERIES_ANGLE = 1e-6


class Sphere(Manifold):
    """The unit sphere S^n in R^(n+1); geodesics are great circles.

    S^1 is the circle; its points are (cos a, sin a).
    """

    delta = 1.0
    Delta = 1.0
    inj = math.pi

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("sphere dimension must be >= 1")
        self.n = n
        self.dim = n
        self.shape = (n + 1,)
        self.name = f"S^{n}"

    def _angle(self, x, y):
        # 2*atan2(|x-y|, |x+y|) is symmetric and accurate at both 0 and pi.
        return 2.0 * math.atan2(np.linalg.norm(x - y), np.linalg.norm(x + y))

    def exp(self, x, v):
        self._check_shapes(x, v)
        t = np.linalg.norm(v)
        y = math.cos(t) * x + np.sinc(t / math.pi) * v
        if abs(np.linalg.norm(y) - 1.0) > REORTHO_TOL:
            y = y / np.linalg.norm(y)
        return y

    def log(self, x, y):
        self._check_shapes(x, y)
        theta = self._angle(x, y)
        if theta > self.inj - CUT_LOCUS_MARGIN:
            raise CutLocus(f"{self}: points are (nearly) antipodal, angle {theta!r}")
        w = y - np.dot(x, y) * x
        w = w - np.dot(x, w) * x
        s = np.linalg.norm(w)
        if s == 0.0:
            return np.zeros_like(x, dtype=float)
        if theta < _SERIES_ANGLE:
            return (1.0 + theta * theta / 6.0) * w
        return (theta / s) * w

    def dist(self, x, y):
        self._check_shapes(x, y)
        return self._angle(np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def project(self, x, a):
        a = np.asarray(a, dtype=float)
        return a - np.dot(x, a) * x

    def random_tangent(self, x, sigma, rng):
        # The projection of an isotropic ambient Gaussian is isotropic on x-perp.
        return self.project(x, sigma * rng.standard_normal(self.shape))

    def base_point(self):
        e1 = np.zeros(self.shape)
        e1[0] = 1.0
        return e1

    def random_point(self, rng):
        g = rng.standard_normal(self.shape)
        return g / np.linalg.norm(g)

    def point_residual(self, x):
        return abs(float(np.linalg.norm(x)) - 1.0)

    def tangent_residual(self, x, v):
        return abs(float(np.dot(x, v)))

    @staticmethod
    def from_angle(angle: float):
        """Point on the circle S^1 at the given angle (radians)."""
        return np.array([math.cos(angle), math.sin(angle)])
