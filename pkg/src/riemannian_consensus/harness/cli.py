"""``riemcon`` command line: run, paper-figures, verify, frechet.

Exit codes: 0 success, 1 a run or check did not meet its acceptance
condition, 2 usage or input error.
"""

import argparse
import csv
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

import numpy as np

from .. import checks
from ..errors import CutLocus, DomainError, InfeasibleTopology
from ..frechet import FrechetConfig, frechet_mean
from ..geometry import make_manifold
from .config import ExperimentConfig, load_config
from .experiment import figure_configs, run_circle_suite, run_experiment

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _add_config_flags(p):
    p.add_argument("--config", help="flat key = value config file")
    for f in fields(ExperimentConfig):
        flag = "--" + f.name.replace("_", "-")
        aliases = [flag] if f.name != "iters" else [flag, "--iterations"]
        p.add_argument(*aliases, dest=f.name, default=None, metavar=f.name.upper(),
                       help=f"override '{f.name}' (default {f.default})")


def build_parser():
    parser = argparse.ArgumentParser(prog="riemcon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one experiment")
    _add_config_flags(p)

    p = sub.add_parser("paper-figures", help="SO(7), S^6, Grass(7,3) and the circle suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="results")
    p.add_argument("--step", default="auto-descent")
    p.add_argument("--jobs", type=int, default=1, help="experiments to run in parallel")

    p = sub.add_parser("verify", help="numerical oracle suite for the geometry")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="multiplier for the case counts")
    p.add_argument("--csv", help="write violations to this CSV file")

    p = sub.add_parser("frechet", help="Frechet mean of points listed in a file")
    p.add_argument("points", help="one point per line, entries flattened row-major")
    p.add_argument("--manifold", required=True, help="e.g. so:3, sphere:2, grassmann:5:2")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-12)
    return parser


def _cmd_run(args):
    overrides = {f.name: getattr(args, f.name) for f in fields(ExperimentConfig)}
    try:
        cfg = load_config(args.config, overrides)
        cfg.build_manifold()
        cfg.build_graph()
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    result = run_experiment(cfg)
    tr = result.trace
    print(f"{cfg.name}: eps={tr.eps:.6g} iterations={tr.iterations} converged={tr.converged} "
          f"max_pair_dist={tr.records[-1].max_pair_dist:.3e} frechet_gap={tr.frechet_gap:.3e}")
    for path in result.files:
        print(f"  wrote {path}")
    if tr.error:
        print(f"error: {tr.error}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _one_figure_run(cfg):
    res = run_experiment(cfg)
    return cfg.name, res.trace.converged, res.trace.frechet_gap, res.trace.error


def _cmd_figures(args):
    configs = figure_configs(seed=args.seed, out=args.out, step=args.step)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_one_figure_run, configs))
    else:
        outcomes = [_one_figure_run(c) for c in configs]
    ok = True
    for name, converged, gap, error in outcomes:
        print(f"{'PASS' if converged else 'FAIL'}  {name:<9} converged={converged} frechet_gap={gap:.3e}"
              + (f" error={error}" if error else ""))
        ok &= converged
    circle = run_circle_suite(Path(args.out) / "circle")
    ring = circle.ring.records[-1]
    print(f"{'PASS' if circle.reproduced else 'FAIL'}  circle    line converged={circle.line.converged} "
          f"ring grad_norm={ring.grad_norm:.2e} ring max_pair_dist={ring.max_pair_dist:.3f}")
    ok &= circle.reproduced
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args):
    results = checks.run_verification(seed=args.seed, scale=args.scale)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["check", "manifold", "case", "value", "tolerance"])
            for r in results:
                for case, value in r.violations:
                    w.writerow([r.name, r.manifold, case, repr(float(value)), r.tolerance])
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def read_points(path, shape):
    rows = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").split()
        if not line:
            continue
        values = np.array([float(t) for t in line])
        if values.size != int(np.prod(shape)):
            raise UsageError(f"{path}:{lineno}: expected {int(np.prod(shape))} numbers, got {values.size}")
        rows.append(values.reshape(shape))
    if not rows:
        raise UsageError(f"{path}: no points")
    return rows


def _cmd_frechet(args):
    try:
        m = make_manifold(args.manifold)
        points = read_points(args.points, m.shape)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    for k, x in enumerate(points):
        try:
            m.check_point(x, tol=1e-6)  # text files rarely carry full precision
        except ValueError as exc:
            raise UsageError(f"point {k + 1}: {exc}") from exc
    res = frechet_mean(m, points, FrechetConfig(max_iter=args.max_iter, tol=args.tol))
    print(f"# {m}: iterations={res.iterations} grad_norm={res.grad_norm:.3e} "
          f"converged={res.converged} certified={res.certified}")
    print(" ".join(repr(float(v)) for v in np.ravel(res.mean)))
    return EXIT_OK if res.converged else EXIT_FAIL


COMMANDS = {
    "run": _cmd_run, "paper-figures": _cmd_figures,
    "verify": _cmd_verify, "frechet": _cmd_frechet,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, InfeasibleTopology) as exc:
        print(f"riemcon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CutLocus as exc:
        print(f"riemcon: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
