"""Shared fixtures: the complex fleet and the suite-wide tripwire guard."""

from __future__ import annotations

import numpy as np
import pytest

from metricext import build_complex, tripwire_log
from metricext.generators import (
    cycle_complex,
    path_complex,
    random_complex,
    rips_complex,
    simplex_complex,
    tree_complex,
)


def book_complex():
    """Two triangles glued along an edge, plus a pendant edge."""
    return build_complex(
        ["a", "b", "c", "d", "e"],
        [["a", "b", "c"], ["b", "c", "d"], ["d", "e"]],
    )


def strip_complex():
    """Three triangles glued in a strip."""
    return build_complex(
        ["a", "b", "c", "d", "e"],
        [["a", "b", "c"], ["b", "c", "d"], ["c", "d", "e"]],
    )


def fleet():
    """Ten-plus generated complexes, all at most 40 vertices."""
    return {
        "tree23": tree_complex(2, 3),
        "tree32": tree_complex(3, 2),
        "path12": path_complex(12),
        "cycle9": cycle_complex(9),
        "cycle16": cycle_complex(16),
        "simplex3": simplex_complex(3),
        "rips_c8": rips_complex(cycle_complex(8), 2),
        "rips_p10": rips_complex(path_complex(10), 2),
        "random14": random_complex(14, 0.25, seed=3),
        "random20": random_complex(20, 0.18, seed=5),
        "book": book_complex(),
    }


@pytest.fixture(scope="session")
def complex_fleet():
    return fleet()


@pytest.fixture(scope="session")
def path3():
    return build_complex(["u", "v", "w"], [["u", "v"], ["v", "w"]])


@pytest.fixture(scope="session")
def triangle():
    return build_complex(["a", "b", "c"], [["a", "b", "c"]])


@pytest.fixture(scope="session")
def book():
    return book_complex()


@pytest.fixture(scope="session")
def strip():
    return strip_complex()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session", autouse=True)
def tripwire_guard():
    """No solver result may undercut a registered lower bound, suite-wide."""
    yield
    log = tripwire_log()
    assert not log.violations, log.violations
