"""Distributed consensus on Riemannian manifolds by synchronous gradient descent."""

from .consensus import (
    Certificate, IterationRecord, NetworkState, RunTrace, StepMode, StepSizePolicy,
    admissible_step, cost, gradient, in_S_conv, in_set_S, mu_max, mu_max_d, run, step,
)
from .errors import CutLocus, DisconnectedGraph, DomainError, InfeasibleTopology, StepSizeWarning
from .frechet import FrechetConfig, FrechetResult, frechet_mean, frechet_variance
from .geometry import Euclidean, Grassmann, Manifold, SpecialOrthogonal, Sphere, make_manifold
from .network import Graph, make_topology

__version__ = "0.1.0"

__all__ = [
    "Certificate", "IterationRecord", "NetworkState", "RunTrace", "StepMode", "StepSizePolicy",
    "admissible_step", "cost", "gradient", "in_S_conv", "in_set_S", "mu_max", "mu_max_d", "run",
    "step", "CutLocus", "DisconnectedGraph", "DomainError", "InfeasibleTopology",
    "StepSizeWarning", "FrechetConfig", "FrechetResult", "frechet_mean", "frechet_variance",
    "Euclidean", "Grassmann", "Manifold", "SpecialOrthogonal", "Sphere", "make_manifold",
    "Graph", "make_topology",
]
