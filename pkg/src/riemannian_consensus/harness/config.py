"""Flat ``key = value`` experiment configuration."""

import dataclasses
import math
from dataclasses import dataclass, fields
from pathlib import Path

from ..geometry import make_manifold
from ..network import make_topology


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    manifold: str = "so"
    n: int = 7
    p: int = 3
    topology: str = "circulant:15:1,2"
    sigma: float = 0.2
    seed: int = 0
    iters: int = 150
    step: str = "auto-descent"
    safety: float = 1.0
    d_max: float | None = None
    grad_tol: float = 1e-10
    consensus_tol: float = 1e-6
    out: str = "results"

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.iters < 0:
            raise ValueError("iters must be non-negative")

    def build_manifold(self):
        return make_manifold(self.manifold, self.n, self.p)

    def build_graph(self):
        g = make_topology(self.topology)
        if g.n_vertices < 2:
            raise ValueError("experiments need at least two nodes")
        return g

    @property
    def nodes(self):
        return self.build_graph().n_vertices

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_text(self):
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None:
                lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"


_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(key, text):
    kind = _FIELD_TYPES[key]
    text = str(text).strip()
    if kind in (int, "int"):
        return int(text)
    if kind in (float, "float"):
        return float(text)
    if "float" in str(kind):  # optional float
        return None if text.lower() in ("", "none", "auto") else float(text)
    return text


def parse_config_text(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; unknown keys are rejected."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        if key not in _FIELD_TYPES:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, value)
    return values


def load_config(path=None, overrides=None) -> ExperimentConfig:
    values = parse_config_text(Path(path).read_text(encoding="utf-8")) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _coerce(key, value)
    cfg = ExperimentConfig(**values)
    if cfg.d_max is not None and not math.isfinite(cfg.d_max):
        cfg.d_max = None
    return cfg
