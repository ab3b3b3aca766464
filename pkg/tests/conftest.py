import numpy as np
import pytest

from riemannian_consensus.geometry import Euclidean, Grassmann, SpecialOrthogonal, Sphere

# Filled by tests/test_acceptance.py; printed once at the end of the session.
ACCEPTANCE_LINES = {}

MANIFOLDS = [Euclidean(3), Sphere(1), Sphere(2), Sphere(6), SpecialOrthogonal(3),
             SpecialOrthogonal(5), SpecialOrthogonal(7), Grassmann(5, 2), Grassmann(7, 3)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture(params=MANIFOLDS, ids=lambda m: m.name)
def manifold(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
