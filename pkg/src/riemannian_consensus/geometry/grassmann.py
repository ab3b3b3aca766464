import math

import numpy as np

from ..errors import CutLocus
from .base import CUT_LOCUS_MARGIN, REORTHO_TOL, Manifold


def principal_angles(x, y):
    """Principal angles between span(x) and span(y), ascending.

    Both inputs must have orthonormal columns. Cosines resolve large angles
    and sines resolve small ones, so each angle is taken from whichever is
    well conditioned.
    """
    m = x.T @ y
    cosines = np.linalg.svd(m, compute_uv=False)
    sines = np.sort(np.linalg.svd(y - x @ m, compute_uv=False))
    small = sines * sines < 0.5
    return np.where(small, np.arcsin(np.minimum(sines, 1.0)), np.arccos(np.minimum(cosines, 1.0)))


class Grassmann(Manifold):
    """p-dimensional subspaces of R^n.

    A point is any n x p matrix with orthonormal columns; two points are equal
    when their column spans agree. Tangent vectors are horizontal
    representatives (x^T v = 0) with metric tr(v^T w), so the distance is the
    2-norm of the principal angles.
    """

    delta = 0.0
    Delta = 2.0
    inj = math.pi / 2

    def __init__(self, n: int, p: int):
        if not 1 <= p < n:
            raise ValueError("Grassmann(n, p) needs 1 <= p < n")
        self.n = n
        self.p = p
        self.dim = p * (n - p)
        self.shape = (n, p)
        self.name = f"Grass({n},{p})"

    def exp(self, x, v):
        self._check_shapes(x, v)
        if not np.any(v):
            return np.array(x, dtype=float)
        u, s, vt = np.linalg.svd(v, full_matrices=False)
        y = (x @ vt.T) * np.cos(s) @ vt + (u * np.sin(s)) @ vt
        if self.point_residual(y) > REORTHO_TOL:
            q, r = np.linalg.qr(y)
            y = q * np.sign(np.diag(r))
        return y

    def log(self, x, y):
        self._check_shapes(x, y)
        if np.array_equal(x, y):
            return np.zeros(self.shape)
        m = x.T @ y
        try:
            a = np.linalg.solve(m.T, (y - x @ m).T).T
        except np.linalg.LinAlgError:
            raise CutLocus(f"{self}: subspaces contain orthogonal directions") from None
        u, s, vt = np.linalg.svd(a, full_matrices=False)
        angles = np.arctan(s)
        if not np.all(angles <= self.inj - CUT_LOCUS_MARGIN):
            raise CutLocus(f"{self}: largest principal angle {angles.max()!r} reaches pi/2")
        v = (u * angles) @ vt
        return v - x @ (x.T @ v)

    def dist(self, x, y):
        self._check_shapes(x, y)
        angles = principal_angles(x, y)
        return float(np.linalg.norm(angles))

    def project(self, x, a):
        a = np.asarray(a, dtype=float)
        return a - x @ (x.T @ a)

    def random_tangent(self, x, sigma, rng):
        # (I - x x^T) G = x_perp (x_perp^T G): the coefficients x_perp^T G are
        # already i.i.d. N(0, sigma^2), so no rescaling is needed.
        return self.project(x, sigma * rng.standard_normal(self.shape))

    def base_point(self):
        return np.eye(self.n, self.p)

    def random_point(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal(self.shape))
        return q

    def point_residual(self, x):
        return float(np.linalg.norm(x.T @ x - np.eye(self.p)))

    def tangent_residual(self, x, v):
        return float(np.linalg.norm(x.T @ v))

    def same_point(self, x, y, tol=1e-9):
        return bool(principal_angles(x, y)[-1] < tol)
