"""Common interface for the manifolds used by the consensus protocol.

Points and tangent vectors are plain numpy arrays. A tangent vector is always
interpreted relative to the base point passed alongside it.
"""

import abc
import math

import numpy as np

# Distance margin below the injectivity boundary at which log gives up.
CUT_LOCUS_MARGIN = 1e-9
# Residual above which exp re-projects its result onto the manifold.
REORTHO_TOL = 1e-12


class Manifold(abc.ABC):
    """A complete Riemannian manifold with curvature bounds delta <= K <= Delta.

    Subclasses set ``dim`` (intrinsic dimension), ``shape`` (array shape of a
    point), ``delta``, ``Delta`` and ``inj``.
    """

    name: str
    dim: int
    shape: tuple
    delta: float
    Delta: float
    inj: float

    @property
    def r_star(self) -> float:
        """Radius below which geodesic balls are convex: min(inj, pi/sqrt(Delta))/2."""
        curvature_radius = math.pi / math.sqrt(self.Delta) if self.Delta > 0 else math.inf
        return 0.5 * min(self.inj, curvature_radius)

    @property
    def constant_curvature(self) -> bool:
        return self.delta == self.Delta

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.shape == other.shape

    def __hash__(self):
        return hash((type(self).__name__, self.shape))

    # -- metric -----------------------------------------------------------

    def inner(self, x, v, w) -> float:
        self._check_shapes(x, v, w)
        return float(np.sum(v * w))

    def norm(self, x, v) -> float:
        return math.sqrt(max(self.inner(x, v, v), 0.0))

    # -- geodesics ----------------------------------------------------------

    @abc.abstractmethod
    def exp(self, x, v):
        """Follow the geodesic from ``x`` with initial velocity ``v`` for unit time."""

    @abc.abstractmethod
    def log(self, x, y):
        """Inverse of ``exp`` at ``x``; raises CutLocus near the cut locus."""

    @abc.abstractmethod
    def dist(self, x, y) -> float:
        """Geodesic distance."""

    # -- tangent spaces -------------------------------------------------------

    @abc.abstractmethod
    def project(self, x, a):
        """Orthogonal projection of an ambient array onto the tangent space at ``x``."""

    @abc.abstractmethod
    def random_tangent(self, x, sigma, rng):
        """Isotropic Gaussian tangent: i.i.d. N(0, sigma^2) coefficients in an orthonormal basis."""

    def zero_tangent(self, x):
        return np.zeros_like(x, dtype=float)

    # -- points ------------------------------------------------------------

    @abc.abstractmethod
    def base_point(self):
        """A fixed reference point (identity, e1, first coordinate axes, origin)."""

    @abc.abstractmethod
    def random_point(self, rng):
        pass

    def point_residual(self, x) -> float:
        """How far ``x`` is from satisfying the point constraints (0 for exact points)."""
        return 0.0

    def tangent_residual(self, x, v) -> float:
        return 0.0

    def check_point(self, x, tol=1e-10):
        x = np.asarray(x, dtype=float)
        if x.shape != self.shape:
            raise ValueError(f"{self}: point has shape {x.shape}, expected {self.shape}")
        res = self.point_residual(x)
        if not res < tol:
            raise ValueError(f"{self}: point constraint residual {res:.3g} exceeds {tol:g}")
        return x

    def check_tangent(self, x, v, tol=1e-10):
        self._check_shapes(x, v)
        res = self.tangent_residual(x, v)
        if not res < tol:
            raise ValueError(f"{self}: tangent constraint residual {res:.3g} exceeds {tol:g}")
        return v

    def same_point(self, x, y, tol=1e-9) -> bool:
        return self.dist(x, y) < tol

    def _check_shapes(self, *arrays):
        for a in arrays:
            if np.shape(a) != self.shape:
                raise ValueError(f"{self}: array of shape {np.shape(a)} does not match {self.shape}")
