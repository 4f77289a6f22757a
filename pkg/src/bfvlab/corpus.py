"""Named example setups used by the tests, the demos and ``bfvlab verify``.

torus       s=4, e=2: constant symplectic structure with the zero section of
            (y1, y2) over (x1..x4) as a Lagrangian-type coisotrope.
fiberlinear s=2, e=2: Pi = y1 dy1^dy2, coisotropic zero section; a graph
            of mu is coisotropic iff mu1 = 0.
quadratic   s=2, e=2: log-canonical quadratic Pi with a nonflat polynomial
            connection.
rank1       s=2, e=1: Pi = dx1^dx2 with a connection depending on x.
mixed       s=1, e=1: Pi = dx1^dy1.
sheared     s=3, e=1: a constant symplectic structure pushed through a
            polynomial triangular change of coordinates; its binary bracket
            on sections is not strictly Jacobi, so the ternary one matters.
"""
from __future__ import annotations

from .bfv import BFVSetup, make_setup

SPECS = {
    "torus": dict(
        s=4, e=2,
        poisson={("x1", "y1"): 1, ("x2", "y2"): 1, ("x3", "x4"): -1},
    ),
    "fiberlinear": dict(
        s=2, e=2,
        poisson={("y1", "y2"): "y1"},
    ),
    "quadratic": dict(
        s=2, e=2,
        poisson={("x1", "x2"): "x1*x2", ("x1", "y1"): "x1*y1", ("x2", "y2"): "-x2*y2",
                 ("y1", "y2"): "2*y1*y2", ("x2", "y1"): "x2*y1"},
        connection={(1, 1, 2): "x2", (2, 2, 1): 1, (1, 2, 2): "x1"},
    ),
    "rank1": dict(
        s=2, e=1,
        poisson={("x1", "x2"): 1},
        connection={(1, 1, 1): "x2", (2, 1, 1): "x1^2"},
    ),
    "mixed": dict(
        s=1, e=1,
        poisson={("x1", "y1"): 1},
    ),
    "sheared": dict(
        s=3, e=1,
        poisson={("x1", "x2"): "1 - x2*y1 + x3*y1^2 - y1^4", ("x1", "x3"): "-x2 + x3*y1 - y1^3",
                 ("x2", "x3"): "-x3 + 3*y1^2", ("x2", "y1"): "y1", ("x3", "y1"): 1},
    ),
}

NAMES = tuple(SPECS)

_cache: dict = {}


def get(name: str) -> BFVSetup:
    """A validated setup by name (cached: setups are immutable)."""
    if name not in SPECS:
        raise KeyError(f"unknown setup {name!r}; known: {', '.join(NAMES)}")
    if name not in _cache:
        _cache[name] = make_setup(name=name, **SPECS[name])
    return _cache[name]


def all_setups() -> list[BFVSetup]:
    return [get(n) for n in NAMES]
