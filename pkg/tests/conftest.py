"""Shared fixtures: bundled polytopes, loaded once per session."""

import pytest

from qbrion import fixtures


@pytest.fixture(scope="session")
def polytopes():
    return {name: fixtures.load(name) for name in fixtures.NAMES}


@pytest.fixture(scope="session")
def hexagon(polytopes):
    return polytopes["hexagon"]


@pytest.fixture(scope="session")
def simplex_p2(polytopes):
    return polytopes["simplex_p2"]


@pytest.fixture(scope="session")
def square(polytopes):
    return polytopes["square_p1xp1"]


@pytest.fixture(scope="session")
def trapezoid(polytopes):
    return polytopes["trapezoid_f1"]


def segment(m):
    from qbrion.lattice import Polytope

    return Polytope.from_facets(1, [((1,), 0), ((-1,), m)])
