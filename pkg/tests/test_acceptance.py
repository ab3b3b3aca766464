"""Acceptance criteria for the reproduction.

Each ``criterion_*`` function returns ``(passed, detail)``. Under pytest one
PASS/FAIL line per criterion is printed in the terminal summary; running the
file directly (``python3 tests/test_acceptance.py``) prints the same lines.
"""

import functools
import math
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from support import ball_points  # noqa: E402

from riemannian_consensus import checks  # noqa: E402
from riemannian_consensus.consensus import (  # noqa: E402
    NetworkState, StepMode, StepSizePolicy, admissible_step, certificate_center,
    full_gradient_norm, gradient, gradient_norm, in_set_S, max_pairwise_distance, mu_max,
    mu_max_d, run, step,
)
from riemannian_consensus.errors import StepSizeWarning  # noqa: E402
from riemannian_consensus.geometry import (  # noqa: E402
    Euclidean, Grassmann, SpecialOrthogonal, Sphere,
)
from riemannian_consensus.harness import circle_measurements, figure_configs, run_experiment  # noqa: E402
from riemannian_consensus.network import (  # noqa: E402
    circulant, complete, line, max_degree, random_regular, random_tree, ring,
)

SEEDS = range(5)
MACHINE_EPS = np.finfo(float).eps


@functools.lru_cache(maxsize=None)
def figure_runs():
    """The 15 reproduction runs (3 manifolds x 5 seeds) and their total wall time."""
    start = time.perf_counter()
    runs = [(seed, cfg.name, run_experiment(cfg, out_dir=False).trace)
            for seed in SEEDS for cfg in figure_configs(seed=seed)]
    return runs, time.perf_counter() - start


def criterion_1():
    runs, elapsed = figure_runs()
    worst = max(tr.records[-1].max_pair_dist for _, _, tr in runs)
    ok = all(tr.converged for _, _, tr in runs) and worst < 1e-6 and elapsed < 60
    return ok, (f"{sum(tr.converged for _, _, tr in runs)}/{len(runs)} runs reached consensus, "
                f"worst max pairwise distance {worst:.2e} (< 1e-6), total {elapsed:.1f} s (< 60 s)")


def criterion_2():
    runs, _ = figure_runs()
    gaps = np.array([tr.frechet_gap for _, _, tr in runs])
    ok = bool(np.all((gaps >= 1e-7) & (gaps <= 1e-2) & (gaps > 1e3 * MACHINE_EPS)))
    per = {name: max(tr.frechet_gap for _, n, tr in runs if n == name) for _, name, _ in runs}
    detail = ", ".join(f"{k} max {v:.2e}" for k, v in per.items())
    return ok, f"gap range [{gaps.min():.2e}, {gaps.max():.2e}] within [1e-7, 1e-2]; {detail}"


def criterion_3():
    # eps = 1/deg equals 2/mu_max on flat space, so the open-interval warning is expected here
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StepSizeWarning)
        return _euclidean_exactness()


def _euclidean_exactness():
    rng = np.random.default_rng(3)
    m = Euclidean(3)
    graphs = [line(6), ring(7), ring(8), circulant(15, [1, 2]), complete(5),
              random_tree(10, 1), random_tree(12, 2), random_regular(12, 3, 0)]
    worst_traj = worst_mean = worst_limit = 0.0
    skipped = 0
    for g in graphs:
        deg = max_degree(g)
        # at eps = 1/deg the spectrum of I - eps L touches -1 exactly on bipartite regular graphs
        touches = np.isclose(np.linalg.eigvalsh(g.laplacian()).max(), 2 * deg)
        for frac in (0.5, 0.9, 1.0):
            eps = frac / deg
            x0 = rng.standard_normal((g.n_vertices, 3))
            s = NetworkState.initial(m, x0)
            oracle = checks.laplacian_consensus_trajectory(g, x0, eps, 200)
            for k in range(1, 201):
                s = step(g, s, eps)
                worst_traj = max(worst_traj, np.abs(s.states - oracle[k]).max())
                worst_mean = max(worst_mean, np.abs(s.states.mean(axis=0) - x0.mean(axis=0)).max())
            if frac == 1.0 and touches:
                skipped += 1
                continue
            tr = run(g, NetworkState.initial(m, x0), StepSizePolicy.explicit(eps), max_iter=50_000,
                     grad_tol=1e-12, diagnostics=False)
            worst_limit = max(worst_limit, np.abs(tr.final_state.states - x0.mean(axis=0)).max())
    ok = worst_traj < 1e-10 and worst_mean < 1e-12 and worst_limit < 1e-8
    return ok, (f"{len(graphs)} graphs x eps in {{0.5, 0.9, 1.0}}/deg: oracle gap {worst_traj:.1e}, "
                f"mean drift {worst_mean:.1e}, distance to average {worst_limit:.1e} "
                f"({skipped} bipartite-regular cases at eps = 1/deg excluded from the limit check)")


def criterion_4():
    m = Sphere(1)
    u = circle_measurements()
    out = {}
    for name, g in (("line", line(5)), ("ring", ring(5))):
        start = time.perf_counter()
        tr = run(g, NetworkState.initial(m, u), StepSizePolicy(), max_iter=2000)
        out[name] = (tr, time.perf_counter() - start)
    (lt, l_time), (rt, r_time) = out["line"], out["ring"]
    last = rt.records[-1]
    ok = (lt.converged and last.grad_norm < 1e-9 and last.max_pair_dist > 1.0
          and l_time < 5 and r_time < 5)
    return ok, (f"line converged={lt.converged} ({l_time:.2f} s); ring grad norm {last.grad_norm:.1e}, "
                f"max pairwise distance {last.max_pair_dist:.3f} rad ({r_time:.2f} s)")


def _random_graph(rng, n):
    kind = rng.integers(4)
    if kind == 0:
        return random_tree(n, int(rng.integers(1 << 30)))
    if kind == 1:
        return ring(n)
    if kind == 2:
        return complete(n)
    return circulant(n, [1, 2]) if n >= 5 else line(n)


def criterion_5():
    grass = mu_max_d(2 * Grassmann(7, 3).r_star, 0.0, 2.0)
    so = mu_max_d(2 * SpecialOrthogonal(7).r_star, 0.0, 0.5)
    rng = np.random.default_rng(5)
    exact_two = all(mu_max_d(d, k, k) == 2.0 for k in (0.0, 0.25, 1.0, 4.0)
                    for d in rng.uniform(1e-3, 0.999 * (math.pi / math.sqrt(k) if k else 50), 25))
    exact_two &= mu_max_d(math.inf, 0.0, 0.0) == 2.0
    manifolds = [Euclidean(3), Sphere(2), Sphere(6), SpecialOrthogonal(3), SpecialOrthogonal(7),
                 Grassmann(7, 3)]
    violations = exceeded = total = 0
    worst_rise = -math.inf
    for m in manifolds:
        for _ in range(100):
            n = int(rng.integers(3, 8))
            g = _random_graph(rng, n)
            _, pts = ball_points(m, n, rng, radius_frac=rng.uniform(0.1, 0.9))
            if rng.random() < 0.5:
                policy = StepSizePolicy(safety=rng.uniform(0.3, 1.0))
            else:
                policy = StepSizePolicy.explicit(rng.uniform(0.05, 0.999) * 2 / mu_max(g, m))
            tr = run(g, NetworkState.initial(m, pts), policy, max_iter=15, diagnostics=False)
            total += 1
            exceeded += tr.d_max_exceeded
            rise = float(np.diff(tr.column("cost")).max()) if len(tr.records) > 1 else -math.inf
            worst_rise = max(worst_rise, rise)
            violations += not tr.cost_is_monotone(1e-12)
    ok = (abs(grass - 3.792) < 1e-3 and abs(so - 3.792) < 1e-3 and exact_two
          and violations == 0 and exceeded == 0)
    return ok, (f"mu(Grass)={grass:.4f}, mu(SO(n>=4))={so:.4f}, constant curvature exactly 2: {exact_two}; "
                f"{total} runs on {len(manifolds)} manifolds, {violations} monotonicity violations, "
                f"largest cost change {worst_rise:.1e}, {exceeded} runs left d_max")


def criterion_6():
    results = checks.run_verification(seed=0)
    failed = [r for r in results if not r.passed]
    names = sorted({r.manifold for r in results})
    ok = not failed
    detail = (f"{len(results) - len(failed)}/{len(results)} checks passed on {', '.join(names)}; "
              + "; ".join(f"{r.name} {r.manifold}: {r.worst:.1e}" for r in failed)) if failed else (
        f"{len(results)}/{len(results)} checks passed on {', '.join(names)}")
    return ok, detail


def _tree_certificate(rng):
    manifolds = [Sphere(1), Sphere(2), SpecialOrthogonal(3), SpecialOrthogonal(4), Grassmann(4, 2)]
    counterexamples = inconclusive = 0
    for k in range(100):
        m = manifolds[k % len(manifolds)]
        g = random_tree(int(rng.integers(3, 8)), 1000 + k)
        _, pts = ball_points(m, g.n_vertices, rng)
        eps = admissible_step(g, m, StepSizePolicy())
        s = NetworkState.initial(m, pts)
        for _ in range(20_000):
            gn = gradient_norm(s, grad := gradient(g, s))
            if gn < 1e-10:
                break
            s = NetworkState(m, np.stack([m.exp(x, -eps * v) for x, v in zip(s.states, grad)]),
                             s.measurements, s.iteration + 1)
        if gn >= 1e-9:
            inconclusive += 1
        elif max_pairwise_distance(m, s.states) >= 1e-6:
            counterexamples += 1
    return counterexamples, inconclusive


def _certified_gradients(rng):
    manifolds = [Sphere(3), SpecialOrthogonal(3), SpecialOrthogonal(5), Grassmann(6, 2), Grassmann(7, 3)]
    found, smallest, zero = 0, math.inf, 0
    while found < 100:
        m = manifolds[found % len(manifolds)]
        n = int(rng.integers(3, 9))
        _, pts = ball_points(m, n, rng)
        s = NetworkState.initial(m, pts)
        if not in_set_S(s) or max_pairwise_distance(m, pts) <= 1e-3:
            continue
        gn = full_gradient_norm(_random_graph(rng, n), s)
        smallest = min(smallest, gn)
        zero += not gn > 0
        found += 1
    return zero, smallest


def _constant_curvature_containment(rng):
    failures, runs, worst_ratio = [], 0, 0.0
    for m in (Sphere(2), Sphere(6), SpecialOrthogonal(3)):
        for k in range(4):
            g = random_regular(8, 3, k) if k % 2 else circulant(9, [1, 2])
            while True:
                _, pts = ball_points(m, g.n_vertices, rng)
                s = NetworkState.initial(m, pts)
                center = certificate_center(s)
                if center is not None:
                    break
            eps = admissible_step(g, m, StepSizePolicy(StepMode.AUTO_POINT))
            initial_radius = max(m.dist(u, center) for u in pts)
            for _ in range(5000):
                radius = max(m.dist(x, center) for x in s.states)
                worst_ratio = max(worst_ratio, radius / m.r_star)
                if radius >= m.r_star:
                    failures.append(f"{m} left the r*-ball")
                    break
                if gradient_norm(s, gradient(g, s)) < 1e-10:
                    break
                s = step(g, s, eps)
            runs += 1
            limit = s.states[0]
            if max_pairwise_distance(m, s.states) >= 1e-6:
                failures.append(f"{m} did not converge")
            elif m.dist(limit, center) > initial_radius + 1e-9:
                failures.append(f"{m} limit outside the measurement ball")
    return failures, runs, worst_ratio


def criterion_7():
    rng = np.random.default_rng(7)
    counterexamples, inconclusive = _tree_certificate(rng)
    zero_grads, smallest = _certified_gradients(rng)
    failures, runs, ratio = _constant_curvature_containment(rng)
    ok = counterexamples == 0 and inconclusive == 0 and zero_grads == 0 and not failures
    return ok, (f"trees: {counterexamples} counterexamples, {inconclusive} runs not stationary; "
                f"S-certified states: {zero_grads} zero gradients (smallest norm {smallest:.1e}); "
                f"constant curvature: {runs} runs, max radius/r* {ratio:.3f}, "
                f"failures {failures or 'none'}")


CRITERIA = {
    1: ("figure reproduction", criterion_1),
    2: ("Frechet-gap magnitude", criterion_2),
    3: ("Euclidean exactness", criterion_3),
    4: ("circle dichotomy", criterion_4),
    5: ("step-size calculus", criterion_5),
    6: ("geometry property suite", criterion_6),
    7: ("convergence certificates", criterion_7),
}


def evaluate(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number} ({title}): {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance(number):
    ok, line = evaluate(number)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
