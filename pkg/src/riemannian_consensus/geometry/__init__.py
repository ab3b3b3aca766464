"""Intrinsic Riemannian primitives for R^n, S^n, SO(n) and Grass(n, p)."""

from .base import Manifold
from .euclidean import Euclidean
from .grassmann import Grassmann, principal_angles
from .kappa import c_kappa, s_kappa
from .rotations import SpecialOrthogonal, rotation_angles, skew_basis
from .sphere import Sphere

__all__ = [
    "Manifold", "Euclidean", "Sphere", "SpecialOrthogonal", "Grassmann",
    "s_kappa", "c_kappa", "principal_angles", "rotation_angles", "skew_basis",
    "make_manifold",
]

_ALIASES = {
    "euclidean": "euclidean", "r": "euclidean", "rn": "euclidean",
    "sphere": "sphere", "s": "sphere",
    "so": "so", "rotation": "so", "special-orthogonal": "so",
    "grassmann": "grassmann", "grass": "grassmann",
}


def make_manifold(kind: str, n: int | None = None, p: int | None = None) -> Manifold:
    """Build a manifold from a kind name and dimensions.

    ``kind`` may carry the dimensions inline, e.g. ``"so:7"``, ``"sphere:6"``,
    ``"grassmann:7:3"``.
    """
    parts = kind.strip().lower().split(":")
    key = _ALIASES.get(parts[0])
    if key is None:
        raise ValueError(f"unknown manifold kind {parts[0]!r}")
    dims = [int(d) for d in parts[1:]]
    if dims:
        n = dims[0]
    if len(dims) > 1:
        p = dims[1]
    if n is None:
        raise ValueError(f"manifold {kind!r} needs a dimension")
    if key == "euclidean":
        return Euclidean(n)
    if key == "sphere":
        return Sphere(n)
    if key == "so":
        return SpecialOrthogonal(n)
    if p is None:
        raise ValueError("Grassmann manifold needs both n and p")
    return Grassmann(n, p)
