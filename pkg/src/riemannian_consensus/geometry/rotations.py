import math

import numpy as np
import scipy.linalg

from ..errors import CutLocus
from .base import CUT_LOCUS_MARGIN, REORTHO_TOL, Manifold


def skew_basis(n: int):
    """The generators E_ij = e_i e_j^T - e_j e_i^T, i < j, orthonormal under 1/2 tr."""
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n))
            e[i, j] = 1.0
            e[j, i] = -1.0
            basis.append(e)
    return basis


def rotation_angles(r):
    """Unitary diagonalisation of an orthogonal matrix.

    Returns ``(z, angles)`` with ``r = z diag(exp(1j*angles)) z^H`` and angles
    in (-pi, pi]. The complex Schur form of a normal matrix is diagonal, which
    keeps this robust under clustered eigenvalues.
    """
    t, z = scipy.linalg.schur(r, output="complex")
    return z, np.angle(np.diag(t))


class SpecialOrthogonal(Manifold):
    """The rotation group SO(n) with the bi-invariant metric <A, B> = tr(A^T B)/2.

    Tangent vectors at R are stored as R @ Omega with Omega skew-symmetric.
    """

    inj = math.pi

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("SO(n) needs n >= 2")
        self.n = n
        self.dim = n * (n - 1) // 2
        self.shape = (n, n)
        self.name = f"SO({n})"
        if n == 2:
            self.delta = self.Delta = 0.0
        elif n == 3:
            self.delta = self.Delta = 0.25
        else:
            self.delta, self.Delta = 0.0, 0.5

    def inner(self, x, v, w):
        self._check_shapes(x, v, w)
        return 0.5 * float(np.sum(v * w))

    def _algebra(self, x, v):
        omega = x.T @ v
        return 0.5 * (omega - omega.T)

    def exp(self, x, v):
        self._check_shapes(x, v)
        y = x @ scipy.linalg.expm(self._algebra(x, v))
        if self.point_residual(y) > REORTHO_TOL:
            y, _ = scipy.linalg.polar(y)
        return y

    def log(self, x, y):
        self._check_shapes(x, y)
        z, angles = rotation_angles(x.T @ y)
        worst = float(np.max(np.abs(angles)))
        if worst > self.inj - CUT_LOCUS_MARGIN:
            raise CutLocus(f"{self}: relative rotation angle {worst!r} is at the cut locus")
        omega = ((z * (1j * angles)) @ z.conj().T).real
        return x @ (0.5 * (omega - omega.T))

    def dist(self, x, y):
        self._check_shapes(x, y)
        angles = np.angle(np.linalg.eigvals(np.asarray(x).T @ y))
        # Each rotation plane contributes a conjugate pair, hence the 1/2.
        return math.sqrt(0.5 * float(np.sum(angles * angles)))

    def project(self, x, a):
        return x @ self._algebra(x, np.asarray(a, dtype=float))

    def random_tangent(self, x, sigma, rng):
        n = self.n
        omega = np.zeros((n, n))
        iu = np.triu_indices(n, 1)
        omega[iu] = sigma * rng.standard_normal(self.dim)
        return x @ (omega - omega.T)

    def base_point(self):
        return np.eye(self.n)

    def random_point(self, rng):
        q, r = np.linalg.qr(rng.standard_normal(self.shape))
        q = q * np.sign(np.diag(r))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q

    def point_residual(self, x):
        res = float(np.linalg.norm(x.T @ x - np.eye(self.n)))
        if np.linalg.det(x) <= 0:
            return math.inf
        return res

    def tangent_residual(self, x, v):
        omega = x.T @ v
        return float(np.linalg.norm(omega + omega.T))

    @staticmethod
    def planar_rotation(n, i, j, theta):
        """Rotation by ``theta`` in the (i, j) coordinate plane."""
        r = np.eye(n)
        c, s = math.cos(theta), math.sin(theta)
        r[i, i] = r[j, j] = c
        r[i, j], r[j, i] = -s, s
        return r
