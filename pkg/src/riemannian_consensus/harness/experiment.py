"""Measurement synthesis, single experiments and the figure suites."""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..consensus import NetworkState, RunTrace, StepSizePolicy, in_set_S, run
from ..frechet import frechet_mean
from ..geometry import Sphere
from ..network import line, ring
from .config import ExperimentConfig
from .svg import line_chart

# Node placements on the circle for the topology-dependent failure case, in degrees.
CIRCLE_ANGLES_DEG = (0.0, 80.0, 170.0, 230.0, 300.0)

FIGURE_MANIFOLDS = (("so7", "so", 7, 3), ("sphere6", "sphere", 6, 3), ("grass7_3", "grassmann", 7, 3))


def generate_measurements(cfg: ExperimentConfig, manifold=None, n_nodes=None):
    """u_i = exp_{x0}(v_i), v_i isotropic Gaussian in T_{x0}M with std ``cfg.sigma``."""
    m = manifold or cfg.build_manifold()
    n_nodes = n_nodes or cfg.nodes
    rng = np.random.default_rng(cfg.seed)
    x0 = m.base_point()
    return np.stack([m.exp(x0, m.random_tangent(x0, cfg.sigma, rng)) for _ in range(n_nodes)])


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    trace: RunTrace
    measurements: np.ndarray
    files: list = field(default_factory=list)


def run_experiment(cfg: ExperimentConfig, out_dir=None) -> ExperimentResult:
    """Generate data, run consensus and write trace/summary CSVs and two SVG charts.

    ``out_dir`` defaults to ``cfg.out / cfg.name``; pass ``False`` to skip writing.
    """
    m = cfg.build_manifold()
    g = cfg.build_graph()
    u = generate_measurements(cfg, m, g.n_vertices)
    policy = StepSizePolicy.parse(cfg.step, d_max=cfg.d_max, safety=cfg.safety)
    trace = run(g, NetworkState.initial(m, u), policy, max_iter=cfg.iters,
                grad_tol=cfg.grad_tol, consensus_tol=cfg.consensus_tol)
    result = ExperimentResult(cfg, trace, u)
    if out_dir is not False:
        target = Path(out_dir) if out_dir else Path(cfg.out) / cfg.name
        result.files = write_outputs(trace, target, cfg, title=f"{m}, N={g.n_vertices}")
    return result


def write_outputs(trace: RunTrace, target: Path, cfg: ExperimentConfig = None, title="", prefix=""):
    target.mkdir(parents=True, exist_ok=True)
    files = []

    def emit(name, text):
        path = target / f"{prefix}{name}"
        path.write_text(text, encoding="utf-8")
        files.append(path)

    emit("trace.csv", trace.trace_csv())
    emit("summary.csv", trace.summary_csv(seed=cfg.seed if cfg else None))
    if cfg is not None:
        emit("config.txt", cfg.to_text())
    its = trace.column("iteration")
    if trace.records and trace.records[0].node_dists is not None:
        dists = np.array([r.node_dists for r in trace.records])
        series = [(f"node {i + 1}", its, dists[:, i]) for i in range(dists.shape[1])]
        emit("node_distances.svg", line_chart(
            series, title=f"{title}: distance of each state to the Frechet mean of the measurements",
            ylabel="distance", log_y=True))
        emit("frechet_gap.svg", line_chart(
            [("gap", its, trace.column("frechet_gap"))],
            title=f"{title}: distance between the states' Frechet mean and the measurements' mean",
            ylabel="distance", log_y=True))
    return files


def figure_configs(seed=0, out="results", step="auto-descent"):
    return [ExperimentConfig(name=name, manifold=kind, n=n, p=p, topology="circulant:15:1,2",
                             sigma=0.2, seed=seed, iters=150, step=step, out=out)
            for name, kind, n, p in FIGURE_MANIFOLDS]


@dataclass
class CircleReport:
    line: RunTrace
    ring: RunTrace
    line_in_S0: bool
    ring_in_S0: bool
    files: list = field(default_factory=list)

    @property
    def reproduced(self):
        """Line reaches consensus; ring stalls at a non-consensus stationary point."""
        ring_last = self.ring.records[-1]
        return (self.line.converged and not self.ring.converged
                and ring_last.grad_norm < 1e-9 and ring_last.max_pair_dist > 1.0)


def circle_measurements():
    return np.stack([Sphere.from_angle(math.radians(a)) for a in CIRCLE_ANGLES_DEG])


def run_circle_suite(out_dir=None, max_iter=2000, grad_tol=1e-10) -> CircleReport:
    """Five nodes on S^1: a line graph converges, a ring graph gets trapped."""
    m = Sphere(1)
    u = circle_measurements()
    s0 = NetworkState.initial(m, u)
    policy = StepSizePolicy()
    line_trace = run(line(5), s0, policy, max_iter=max_iter, grad_tol=grad_tol)
    ring_trace = run(ring(5), s0, policy, max_iter=max_iter, grad_tol=grad_tol)
    in_s0 = bool(in_set_S(s0))
    report = CircleReport(line_trace, ring_trace, in_s0, in_s0)
    if out_dir:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        for name, tr in (("line", line_trace), ("ring", ring_trace)):
            path = target / f"trace_{name}.csv"
            path.write_text(tr.trace_csv(), encoding="utf-8")
            report.files.append(path)
        combined = [["case"] + line_trace.trace_rows()[0]]
        for name, tr in (("line", line_trace), ("ring", ring_trace)):
            combined += [[name] + row for row in tr.trace_rows()[1:]]
        (target / "trace.csv").write_text(
            "\n".join(",".join(str(c) for c in r) for r in combined) + "\n", encoding="utf-8")
        report.files.append(target / "trace.csv")
        header, line_row = line_trace.summary_row()
        _, ring_row = ring_trace.summary_row()
        rows = [["case"] + header, ["line"] + line_row, ["ring"] + ring_row]
        summary = "\n".join(",".join(str(c) for c in r) for r in rows) + "\n"
        (target / "summary.csv").write_text(summary, encoding="utf-8")
        report.files.append(target / "summary.csv")
        series = []
        for name, tr in (("line", line_trace), ("ring", ring_trace)):
            series.append((f"{name}: max pairwise distance", tr.column("iteration"), tr.column("max_pair_dist")))
            series.append((f"{name}: gradient norm", tr.column("iteration"), tr.column("grad_norm")))
        (target / "circle.svg").write_text(line_chart(
            series, title="Five nodes on the circle: line vs ring topology", log_y=True), encoding="utf-8")
        report.files.append(target / "circle.svg")
    return report


def measurement_mean(manifold, u):
    return frechet_mean(manifold, u).mean
