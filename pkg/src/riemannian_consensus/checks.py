"""Independent numerical oracles for the geometry and the step-size bounds.

Nothing here calls the consensus update; these functions only use exp, dist
and plain linear algebra so they can serve as references for it.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .consensus import mu_max_d
from .errors import DomainError
from .geometry import Euclidean, Grassmann, Manifold, SpecialOrthogonal, Sphere
from .network import Graph, max_degree


def finite_diff_gradient(f, manifold: Manifold, x, v, h=1e-5) -> float:
    """Central difference of f along the geodesic through x with velocity v."""
    return (f(manifold.exp(x, h * v)) - f(manifold.exp(x, -h * v))) / (2 * h)


def half_squared_distance_along(manifold: Manifold, x1, v1, x2, v2):
    """t -> 1/2 d^2(exp_{x1}(t v1), exp_{x2}(t v2))."""
    def f(t):
        return 0.5 * manifold.dist(manifold.exp(x1, t * v1), manifold.exp(x2, t * v2)) ** 2
    return f


def second_derivative_along_hinge(manifold: Manifold, x1, v1, x2, v2, h=1e-4) -> float:
    """Second derivative at t=0 of 1/2 d^2 between two points moving on geodesics.

    ``v1`` is tangent at ``x1`` and ``v2`` at ``x2``. Central second difference.
    """
    f = half_squared_distance_along(manifold, x1, v1, x2, v2)
    return (f(h) - 2 * f(0.0) + f(-h)) / (h * h)


def cosine_law_third_side(kappa: float, l1: float, l2: float, beta: float) -> float:
    """Side opposite the angle ``beta`` of a geodesic hinge in constant curvature ``kappa``.

    Uses the laws of cosines rewritten with half angles, e.g. for kappa > 0
    sin^2(c/2) = sin^2((a-b)/2) + sin(a) sin(b) sin^2(beta/2) with a, b, c the
    sides scaled by sqrt(kappa); this avoids arccos near 1.
    """
    if l1 < 0 or l2 < 0:
        raise DomainError("side lengths must be non-negative")
    hb = math.sin(beta / 2) ** 2
    if kappa == 0:
        return math.sqrt((l1 - l2) ** 2 + 4 * l1 * l2 * hb)
    r = math.sqrt(abs(kappa))
    a, b = r * l1, r * l2
    if kappa > 0:
        if a >= math.pi or b >= math.pi:
            raise DomainError("hinge sides must be shorter than pi/sqrt(kappa)")
        hav = math.sin((a - b) / 2) ** 2 + math.sin(a) * math.sin(b) * hb
        hav = min(max(hav, 0.0), 1.0)
        return 2 * math.atan2(math.sqrt(hav), math.sqrt(1 - hav)) / r
    q = math.sinh((a - b) / 2) ** 2 + math.sinh(a) * math.sinh(b) * hb
    return 2 * math.asinh(math.sqrt(q)) / r


def hinge_angle(manifold: Manifold, y, v1, v2) -> float:
    """Angle between two tangent vectors at y, accurate near 0 and pi."""
    u1 = v1 / manifold.norm(y, v1)
    u2 = v2 / manifold.norm(y, v2)
    return 2 * math.atan2(manifold.norm(y, u1 - u2), manifold.norm(y, u1 + u2))


def laplacian_consensus_trajectory(g: Graph, x0, eps: float, iters: int):
    """All iterates of x <- x + eps sum_j (x_j - x_i), i.e. x <- (I - eps L) x."""
    if eps > 1.0 / max(max_degree(g), 1) + 1e-15:
        raise ValueError("the Laplacian oracle requires eps <= 1/deg(G)")
    w = np.eye(g.n_vertices) - eps * g.laplacian()
    x = np.array(x0, dtype=float)
    out = [x]
    for _ in range(iters):
        x = np.tensordot(w, x, axes=1)
        out.append(x)
    return out


def laplacian_consensus_oracle(g: Graph, x0, eps: float, iters: int):
    return laplacian_consensus_trajectory(g, x0, eps, iters)[-1]


# -- verification suite -----------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    manifold: str
    cases: int
    tolerance: float
    worst: float = 0.0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}  {self.name:<26} {self.manifold:<11} cases={self.cases:<5} "
                f"worst={self.worst:.3e} tol={self.tolerance:.1e} violations={len(self.violations)}")


def default_manifolds():
    return [Euclidean(3), Sphere(2), Sphere(6), SpecialOrthogonal(3), SpecialOrthogonal(5),
            SpecialOrthogonal(7), Grassmann(7, 3), Grassmann(5, 2)]


def _bounded_tangent(m, x, rng, max_norm):
    """Random tangent with norm uniform in [0, max_norm)."""
    v = m.random_tangent(x, 1.0, rng)
    nv = m.norm(x, v)
    return v * (max_norm * rng.random() / nv) if nv > 0 else v


def _unit_tangent(m, x, rng):
    v = m.random_tangent(x, 1.0, rng)
    return v / m.norm(x, v)


def check_roundtrip(m, rng, cases=1000, tol=1e-8):
    """log(x, exp(x, v)) == v for |v| < 0.9 inj (or 3 on unbounded spaces)."""
    res = CheckResult("exp/log round trip", m.name, cases, tol)
    radius = 0.9 * m.inj if math.isfinite(m.inj) else 3.0
    for k in range(cases):
        x = m.random_point(rng)
        v = _bounded_tangent(m, x, rng, radius)
        err = m.norm(x, m.log(x, m.exp(x, v)) - v)
        res.worst = max(res.worst, err)
        if not err < tol:
            res.violations.append((k, err))
    return res


def check_dist_is_log_norm(m, rng, cases=1000, tol=1e-10):
    res = CheckResult("dist = |log|", m.name, cases, tol)
    radius = 0.9 * m.inj if math.isfinite(m.inj) else 3.0
    for k in range(cases):
        x = m.random_point(rng)
        y = m.exp(x, _bounded_tangent(m, x, rng, radius))
        err = abs(m.dist(x, y) - m.norm(x, m.log(x, y)))
        res.worst = max(res.worst, err)
        if not err < tol:
            res.violations.append((k, err))
    return res


def check_gradient_identity(m, rng, cases=200, tol=1e-5, h=1e-5):
    """grad of 1/2 d^2(., y) is -log_x(y), compared by central differences (relative error)."""
    res = CheckResult("gradient identity", m.name, cases, tol)
    radius = m.r_star if math.isfinite(m.r_star) else 3.0
    for k in range(cases):
        x = m.random_point(rng)
        y = m.exp(x, _bounded_tangent(m, x, rng, radius))
        v = _unit_tangent(m, x, rng)
        fd = finite_diff_gradient(lambda z: 0.5 * m.dist(z, y) ** 2, m, x, v, h)
        exact = m.inner(x, -m.log(x, y), v)
        err = abs(fd - exact) / max(abs(exact), 1.0)
        res.worst = max(res.worst, err)
        if not err < tol:
            res.violations.append((k, err))
    return res


def check_cosine_law(m, kappa, rng, cases=500, tol=1e-8):
    """Third side of random hinges (sides < r*) from dist vs the closed-form law of cosines."""
    res = CheckResult("law of cosines", m.name, cases, tol)
    radius = m.r_star if math.isfinite(m.r_star) else 3.0
    for k in range(cases):
        y = m.random_point(rng)
        v1 = _unit_tangent(m, y, rng) * radius * rng.uniform(0.01, 1.0)
        v2 = _unit_tangent(m, y, rng) * radius * rng.uniform(0.01, 1.0)
        beta = hinge_angle(m, y, v1, v2)
        expected = cosine_law_third_side(kappa, m.norm(y, v1), m.norm(y, v2), beta)
        err = abs(m.dist(m.exp(y, v1), m.exp(y, v2)) - expected)
        res.worst = max(res.worst, err)
        if not err < tol:
            res.violations.append((k, err))
    return res


def check_hessian_bound(m, rng, cases=500, slack=1e-6, h=1e-4):
    """Second derivative of 1/2 d^2 along random geodesic pairs never exceeds mu_max^d(l) (|v1|^2 + |v2|^2)."""
    res = CheckResult("hessian bound", m.name, cases, slack, worst=-math.inf)
    d_max = 2 * m.r_star if math.isfinite(m.r_star) else 5.0
    for k in range(cases):
        x1 = m.random_point(rng)
        sep = rng.uniform(0.05, 0.999 * d_max)
        x2 = m.exp(x1, sep * _unit_tangent(m, x1, rng))
        v1 = m.random_tangent(x1, 1.0, rng)
        v2 = m.random_tangent(x2, 1.0, rng)
        l = m.dist(x1, x2)
        bound = mu_max_d(l, m.delta, m.Delta) * (m.inner(x1, v1, v1) + m.inner(x2, v2, v2))
        value = second_derivative_along_hinge(m, x1, v1, x2, v2, h)
        excess = value - bound
        res.worst = max(res.worst, excess)
        if not excess <= slack:
            res.violations.append((k, excess))
    return res


def run_verification(seed=0, scale=1.0):
    """The full oracle suite; ``scale`` shrinks case counts for quick runs."""
    rng = np.random.default_rng(seed)

    def n(c):
        return max(1, int(c * scale))

    results = []
    for m in default_manifolds():
        results.append(check_roundtrip(m, rng, n(1000)))
        results.append(check_dist_is_log_norm(m, rng, n(1000)))
        results.append(check_gradient_identity(m, rng, n(200)))
        results.append(check_hessian_bound(m, rng, n(500)))
    for m, kappa in [(Sphere(2), 1.0), (Sphere(6), 1.0), (SpecialOrthogonal(3), 0.25), (Euclidean(3), 0.0)]:
        results.append(check_cosine_law(m, kappa, rng, n(500)))
    return results
