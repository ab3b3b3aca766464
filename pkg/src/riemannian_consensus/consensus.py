"""Riemannian consensus: gradient descent on phi(x) = 1/2 sum_{ij in E} d^2(x_i, x_j).

Every node moves along the geodesic x_i <- exp_{x_i}(eps * sum_j log_{x_i}(x_j)),
with all gradients taken from the same snapshot (synchronous/Jacobi update).
"""

import csv
import enum
import io
import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CutLocus, DisconnectedGraph, DomainError, StepSizeWarning
from .frechet import FrechetConfig, frechet_mean
from .geometry import Manifold, c_kappa, s_kappa
from .network import Graph, diameter, is_connected, max_degree

# Relative margin keeping the auto-selected descent step inside the open interval (0, 2/mu).
DESCENT_MARGIN = 1e-9


@dataclass
class NetworkState:
    manifold: Manifold
    states: np.ndarray  # shape (N, *manifold.shape)
    measurements: np.ndarray
    iteration: int = 0

    def __post_init__(self):
        self.states = np.asarray(self.states, dtype=float)
        self.measurements = np.asarray(self.measurements, dtype=float)
        shape = self.manifold.shape
        if self.states.shape[1:] != shape or self.measurements.shape[1:] != shape:
            raise ValueError(f"states must have shape (N, {shape})")
        if len(self.states) != len(self.measurements):
            raise ValueError("states and measurements differ in length")
        self.measurements.flags.writeable = False

    @classmethod
    def initial(cls, manifold, measurements):
        """State at iteration 0: every node starts at its own measurement."""
        u = np.array(measurements, dtype=float)
        return cls(manifold, u.copy(), u, 0)

    @property
    def n_nodes(self):
        return len(self.states)


# -- cost and gradient ------------------------------------------------------------

def cost(g: Graph, s: NetworkState) -> float:
    m = s.manifold
    return 0.5 * sum(m.dist(s.states[i], s.states[j]) ** 2 for i, j in g.edge_list)


def grad_node(g: Graph, s: NetworkState, i: int):
    """Riemannian gradient of phi with respect to x_i: -sum_{j in N_i} log_{x_i}(x_j)."""
    m = s.manifold
    xi = s.states[i]
    grad = m.zero_tangent(xi)
    for j in g.neighbors[i]:
        grad -= m.log(xi, s.states[j])
    return grad


def gradient(g: Graph, s: NetworkState):
    return np.stack([grad_node(g, s, i) for i in range(s.n_nodes)])


def gradient_norm(s: NetworkState, grad) -> float:
    m = s.manifold
    return math.sqrt(sum(m.inner(x, v, v) for x, v in zip(s.states, grad)))


def full_gradient_norm(g: Graph, s: NetworkState) -> float:
    """Norm of the gradient on the product manifold M^N."""
    return gradient_norm(s, gradient(g, s))


# -- step-size calculus -------------------------------------------------------

def mu_max_d(d_max: float, delta: float, Delta: float) -> float:
    """Bound on the Hessian of 1/2 d^2(x_i, x_j) while d(x_i, x_j) < d_max.

    max{2, d (C_delta(d)/S_delta(d) + 1/S_Delta(d))}; equals 2 for constant
    curvature delta = Delta >= 0 at every distance.
    """
    if not d_max > 0:
        raise DomainError("d_max must be positive")
    if delta > Delta:
        raise DomainError("lower curvature bound exceeds upper bound")
    if delta == Delta and delta >= 0:
        return 2.0
    if math.isinf(d_max):
        raise DomainError("unbounded d_max only admits constant non-negative curvature")
    s_upper = s_kappa(Delta, d_max)
    s_lower = s_kappa(delta, d_max)
    if s_upper <= 0 or s_lower <= 0:
        raise DomainError(f"S_kappa({d_max}) is not positive; d_max is beyond pi/sqrt(Delta)")
    return max(2.0, d_max * (c_kappa(delta, d_max) / s_lower + 1.0 / s_upper))


class StepMode(enum.Enum):
    EXPLICIT = "explicit"
    AUTO_DESCENT = "auto-descent"
    AUTO_POINT = "auto-point"


@dataclass(frozen=True)
class StepSizePolicy:
    mode: StepMode = StepMode.AUTO_DESCENT
    eps: float | None = None
    d_max: float | None = None  # None means 2 r*
    safety: float = 1.0

    def __post_init__(self):
        if self.mode is StepMode.EXPLICIT and not (self.eps is not None and self.eps > 0):
            raise ValueError("explicit step size must be positive")
        if not 0 < self.safety <= 1:
            raise ValueError("safety factor must lie in (0, 1]")

    @classmethod
    def explicit(cls, eps):
        return cls(StepMode.EXPLICIT, eps=float(eps))

    @classmethod
    def parse(cls, text: str, d_max=None, safety=1.0):
        """``auto-descent``, ``auto-point`` or ``explicit:<eps>`` (a bare number also works)."""
        text = text.strip().lower()
        if text.startswith("explicit:"):
            return cls(StepMode.EXPLICIT, eps=float(text.split(":", 1)[1]), d_max=d_max, safety=safety)
        try:
            return cls(StepMode(text), d_max=d_max, safety=safety)
        except ValueError:
            return cls(StepMode.EXPLICIT, eps=float(text), d_max=d_max, safety=safety)

    def __str__(self):
        return f"explicit:{self.eps}" if self.mode is StepMode.EXPLICIT else self.mode.value


def resolve_d_max(m: Manifold, policy: StepSizePolicy) -> float:
    limit = 2 * m.r_star
    d_max = limit if policy.d_max is None else policy.d_max
    if d_max > limit:
        raise DomainError(f"d_max={d_max} exceeds 2 r* = {limit}")
    return d_max


def mu_max(g: Graph, m: Manifold, d_max: float | None = None) -> float:
    """Hessian bound for phi on M^N: mu_max^d(d_max) * deg(G)."""
    d_max = 2 * m.r_star if d_max is None else d_max
    return mu_max_d(d_max, m.delta, m.Delta) * max_degree(g)


def admissible_step(g: Graph, m: Manifold, policy: StepSizePolicy) -> float:
    """Step size for the policy; warns (StepSizeWarning) on an explicit eps >= 2/mu_max."""
    mu = mu_max(g, m, resolve_d_max(m, policy))
    if policy.mode is StepMode.AUTO_DESCENT:
        return policy.safety * (2.0 / mu) * (1.0 - DESCENT_MARGIN)
    if policy.mode is StepMode.AUTO_POINT:
        return policy.safety / mu
    if policy.eps >= 2.0 / mu:
        warnings.warn(f"step size {policy.eps} is not below 2/mu_max = {2.0 / mu:.6g}", StepSizeWarning)
    return policy.eps


# -- the protocol ----------------------------------------------------------------

def _advance(s: NetworkState, grad, eps) -> NetworkState:
    m = s.manifold
    new = np.stack([m.exp(x, -eps * v) for x, v in zip(s.states, grad)])
    return NetworkState(m, new, s.measurements, s.iteration + 1)


def step(g: Graph, s: NetworkState, eps: float) -> NetworkState:
    """One synchronous iteration; all gradients read the iteration-l snapshot."""
    if not eps > 0:
        raise ValueError("step size must be positive")
    return _advance(s, gradient(g, s), eps)


# -- diagnostics and certificates ---------------------------------------------

def max_pairwise_distance(m: Manifold, points) -> float:
    return max((m.dist(a, b) for a, b in itertools.combinations(points, 2)), default=0.0)


def max_edge_distance(g: Graph, s: NetworkState) -> float:
    m = s.manifold
    return max((m.dist(s.states[i], s.states[j]) for i, j in g.edge_list), default=0.0)


class Certificate(enum.Enum):
    CERTIFIED_YES = "certified_yes"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is Certificate.CERTIFIED_YES


def certificate_center(s: NetworkState, extra_candidates=()):
    """A center y with max_i d(x_i, y) < r*, or None if no tried candidate works.

    Candidates are ``extra_candidates``, the Frechet mean of the states, then
    each state in turn. This is a sufficient test for membership in the tube
    around the consensus diagonal, not a decision procedure.
    """
    m = s.manifold
    r = m.r_star

    def radius(y):
        return max(m.dist(x, y) for x in s.states)

    candidates = list(extra_candidates)
    if not candidates:
        try:
            candidates.append(frechet_mean(m, s.states, FrechetConfig(max_iter=200, tol=1e-10)).mean)
        except CutLocus:
            pass
    candidates.extend(s.states)
    for y in candidates:
        if radius(y) < r:
            return y
    return None


def in_set_S(s: NetworkState, extra_candidates=()) -> Certificate:
    if math.isinf(s.manifold.r_star):
        return Certificate.CERTIFIED_YES
    if certificate_center(s, extra_candidates) is not None:
        return Certificate.CERTIFIED_YES
    return Certificate.UNKNOWN


def in_S_conv(g: Graph, s: NetworkState) -> bool:
    """phi(x) < r*^2 / (2 diam(G)); always true when r* is infinite."""
    r = s.manifold.r_star
    if math.isinf(r):
        return True
    try:
        phi = cost(g, s)
    except CutLocus:
        return False
    return phi < r * r / (2 * diameter(g))


# -- runs ----------------------------------------------------------------------

@dataclass
class IterationRecord:
    iteration: int
    cost: float
    grad_norm: float
    max_pair_dist: float
    max_edge_dist: float
    in_S: bool | None = None
    in_S_conv: bool | None = None
    node_dists: np.ndarray | None = None  # distance of each node to the reference mean
    frechet_gap: float | None = None  # distance from the states' Frechet mean to the reference


@dataclass
class RunTrace:
    eps: float
    eps_admissible: bool
    d_max: float
    records: list = field(default_factory=list)
    reference: np.ndarray | None = None
    final_state: NetworkState | None = None
    final_mean: np.ndarray | None = None
    frechet_gap: float = math.nan
    converged: bool = False
    d_max_exceeded: bool = False
    error: str | None = None

    @property
    def iterations(self):
        return self.final_state.iteration if self.final_state is not None else 0

    def column(self, name):
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def cost_is_monotone(self, slack=1e-12) -> bool:
        c = self.column("cost")
        return bool(np.all(np.diff(c) <= slack))

    # -- CSV ---------------------------------------------------------------

    def trace_rows(self):
        n = self.final_state.n_nodes if self.final_state is not None else 0
        header = ["iter", "cost", "grad_norm", "max_pair_dist", "max_edge_dist", "in_S", "in_S_conv"]
        header += [f"dist_node_{i + 1}_to_frechet" for i in range(n)]
        header.append("frechet_gap")
        rows = [header]
        for r in self.records:
            dists = r.node_dists if r.node_dists is not None else [math.nan] * n
            rows.append([
                r.iteration, _fmt(r.cost), _fmt(r.grad_norm), _fmt(r.max_pair_dist),
                _fmt(r.max_edge_dist), _flag(r.in_S), _flag(r.in_S_conv),
                *(_fmt(d) for d in dists),
                _fmt(r.frechet_gap),
            ])
        return rows

    def summary_row(self, seed=None):
        first = self.records[0] if self.records else None
        header = ["seed", "epsilon", "converged", "frechet_gap", "iterations", "final_max_pair_dist",
                  "final_grad_norm", "in_S_0", "in_S_conv_0", "eps_admissible", "d_max_exceeded", "error"]
        last = self.records[-1] if self.records else None
        row = [
            "" if seed is None else seed, _fmt(self.eps), int(self.converged), _fmt(self.frechet_gap),
            self.iterations, _fmt(last.max_pair_dist if last else math.nan),
            _fmt(last.grad_norm if last else math.nan),
            _flag(first.in_S if first else None), _flag(first.in_S_conv if first else None),
            int(self.eps_admissible), int(self.d_max_exceeded), self.error or "",
        ]
        return [header, row]

    def trace_csv(self) -> str:
        return _to_csv(self.trace_rows())

    def summary_csv(self, seed=None) -> str:
        return _to_csv(self.summary_row(seed))


def _fmt(x):
    if x is None:
        return ""
    return repr(float(x))


def _flag(b):
    return "" if b is None else int(bool(b))


def _to_csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def run(g: Graph, s0: NetworkState, policy: StepSizePolicy, max_iter: int = 150,
        grad_tol: float = 1e-10, consensus_tol: float = 1e-6, diagnostics: bool = True,
        reference=None) -> RunTrace:
    """Iterate the protocol until the gradient norm drops below ``grad_tol`` or ``max_iter``.

    With ``diagnostics`` each record also carries the S / S_conv certificates,
    the per-node distance to ``reference`` (default: the Frechet mean of the
    measurements) and the distance from the states' Frechet mean to it.
    A CutLocus error stops the run; the partial trace is returned with ``error`` set.
    """
    if not is_connected(g):
        raise DisconnectedGraph("consensus needs a connected graph")
    if g.n_vertices != s0.n_nodes:
        raise ValueError("graph and state disagree on the number of nodes")
    m = s0.manifold
    d_max = resolve_d_max(m, policy)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", StepSizeWarning)
        eps = admissible_step(g, m, policy)
    admissible = not any(issubclass(w.category, StepSizeWarning) for w in caught)
    for w in caught:
        warnings.warn_explicit(w.message, w.category, w.filename, w.lineno)

    trace = RunTrace(eps=eps, eps_admissible=admissible, d_max=d_max)
    s = s0
    trace.final_state = s
    states_mean = None
    try:
        if diagnostics and reference is None:
            reference = _states_mean(m, s0.measurements, None)
        trace.reference = reference
        while True:
            grad = gradient(g, s)
            rec = IterationRecord(
                iteration=s.iteration,
                cost=cost(g, s),
                grad_norm=gradient_norm(s, grad),
                max_pair_dist=max_pairwise_distance(m, s.states),
                max_edge_dist=max_edge_distance(g, s),
            )
            if rec.max_edge_dist >= d_max:
                trace.d_max_exceeded = True
            if diagnostics:
                states_mean = _states_mean(m, s.states, states_mean)
                have_gap = states_mean is not None and reference is not None
                rec.frechet_gap = m.dist(states_mean, reference) if have_gap else math.nan
                extra = [states_mean] if states_mean is not None else ()
                rec.in_S = bool(in_set_S(s, extra_candidates=extra))
                rec.in_S_conv = in_S_conv(g, s)
                if reference is not None:
                    rec.node_dists = np.array([m.dist(x, reference) for x in s.states])
            trace.records.append(rec)
            trace.final_state = s
            if rec.grad_norm < grad_tol or s.iteration >= max_iter:
                break
            s = _advance(s, grad, eps)
    except CutLocus as exc:
        trace.error = f"CutLocus: {exc}"

    last = trace.records[-1] if trace.records else None
    trace.converged = trace.error is None and last is not None and last.max_pair_dist < consensus_tol
    if diagnostics and trace.error is None:
        trace.final_mean = states_mean
        trace.frechet_gap = last.frechet_gap
    return trace


def _states_mean(m, states, warm):
    cfg = FrechetConfig(init=warm if warm is not None else states[0])
    try:
        return frechet_mean(m, states, cfg).mean
    except CutLocus:
        return None
