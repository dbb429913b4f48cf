import random

import pytest

from thetafan.catalog import (a2_bare, a2_frozen, b2_bare, kronecker2_bare,
                              kronecker_frozen, torus)
from thetafan.scattering import consistent_completion, initial_diagram
from thetafan.seeds import SeedGeometry
from thetafan.theta import PLSection


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture(scope="session")
def a2():
    seed = a2_bare()
    return _context(seed, order=6)


@pytest.fixture(scope="session")
def kronecker2():
    seed = kronecker2_bare()
    return _context(seed, order=6)


@pytest.fixture(scope="session")
def b2():
    seed = b2_bare()
    return _context(seed, order=6)


@pytest.fixture(scope="session")
def torus_ctx():
    seed = torus()
    return _context(seed, order=6)


@pytest.fixture(scope="session")
def a2f():
    seed, ambient = a2_frozen()
    ctx = _context(seed, order=4)
    ctx["ambient"] = ambient
    ctx["bar"] = lambda x: ctx["geom"]._bar_coords_of_ambient(ambient(x))
    return ctx


@pytest.fixture(scope="session")
def k2f():
    seed, ambient = kronecker_frozen()
    ctx = _context(seed, order=4)
    ctx["ambient"] = ambient
    ctx["bar"] = lambda x: ctx["geom"]._bar_coords_of_ambient(ambient(x))
    return ctx


def _context(seed, order):
    geom = SeedGeometry(seed)
    diagram = consistent_completion(initial_diagram(geom, order), order)
    return {
        "seed": seed,
        "geom": geom,
        "diagram": diagram,
        "order": order,
        "section": PLSection(geom),
    }
