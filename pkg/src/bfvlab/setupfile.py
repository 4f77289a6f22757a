"""Reader for ``key = value`` setup files.

    # comment
    name = torus
    base_dim = 4
    fiber_dim = 2
    poisson.x1.y1 = 1
    poisson.x3.x4 = -1
    connection.1.2.1 = x2      # Gamma^1_{1 2}
    jet_order_eps = 3
    debug.break_sign = true    # mutation harness only

Errors carry the line and column of the offending text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .bfv import BFVSetup, make_setup
from .oddsymplectic import PhaseAlgebra
from .superpoly import ParseError, parse

_LINE = re.compile(r"^(\s*)([A-Za-z_][A-Za-z0-9_.]*)(\s*)=(\s*)(.*?)\s*$")


class SetupFileError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class SetupFile:
    base_dim: int
    fiber_dim: int
    poisson: dict = field(default_factory=dict)
    connection: dict = field(default_factory=dict)
    jet_order_eps: int | None = None
    name: str = ""
    debug: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)


def _int(value, line, col, key):
    try:
        v = int(value)
    except ValueError:
        raise SetupFileError(f"{key} must be an integer, got {value!r}", line, col) from None
    if v < 0:
        raise SetupFileError(f"{key} must be nonnegative", line, col)
    return v


def read_text(text: str) -> SetupFile:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _LINE.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise SetupFileError("expected 'key = value'", lineno, col)
        key = m.group(2)
        vcol = m.start(5) + 1
        if key in entries:
            raise SetupFileError(f"duplicate key {key!r}", lineno, m.start(2) + 1)
        if not m.group(5):
            raise SetupFileError(f"missing value for {key!r}", lineno, vcol)
        entries[key] = (m.group(5), lineno, vcol, m.start(2) + 1)

    for req in ("base_dim", "fiber_dim"):
        if req not in entries:
            raise SetupFileError(f"missing required key {req!r}", 1, 1)
    sf = SetupFile(_int(entries["base_dim"][0], *entries["base_dim"][1:3], "base_dim"),
                   _int(entries["fiber_dim"][0], *entries["fiber_dim"][1:3], "fiber_dim"))
    for key, (value, line, col, kcol) in entries.items():
        parts = key.split(".")
        if key in ("base_dim", "fiber_dim"):
            continue
        if key == "name":
            sf.name = value
        elif key == "jet_order_eps":
            sf.jet_order_eps = _int(value, line, col, key)
        elif parts[0] == "debug" and len(parts) == 2:
            if value not in ("true", "false"):
                raise SetupFileError(f"{key} must be true or false", line, col)
            sf.debug[parts[1]] = value == "true"
        elif parts[0] == "poisson" and len(parts) == 3:
            sf.poisson[(parts[1], parts[2])] = value
            sf.positions[("poisson", parts[1], parts[2])] = (line, col, kcol)
        elif parts[0] == "connection" and len(parts) == 4:
            try:
                idx = tuple(int(p) for p in parts[1:])
            except ValueError:
                raise SetupFileError(f"connection indices must be integers in {key!r}",
                                     line, kcol) from None
            sf.connection[idx] = value
            sf.positions[("connection",) + idx] = (line, col, kcol)
        else:
            raise SetupFileError(f"unknown key {key!r}", line, kcol)
    return sf


def build(sf: SetupFile) -> BFVSetup:
    """Parse the polynomial entries; validation is left to the caller."""
    alg = PhaseAlgebra(sf.base_dim, sf.fiber_dim)
    coords = set(alg.xs + alg.ys)
    poisson = {}
    for (a, b), text in sf.poisson.items():
        line, col, kcol = sf.positions[("poisson", a, b)]
        for n in (a, b):
            if n not in coords:
                raise SetupFileError(f"{n!r} is not a coordinate of this setup", line, kcol)
        poisson[(a, b)] = _poly(text, alg, line, col)
    connection = {}
    for idx, text in sf.connection.items():
        line, col, kcol = sf.positions[("connection",) + idx]
        connection[idx] = _poly(text, alg, line, col)
    setup = make_setup(sf.base_dim, sf.fiber_dim, poisson, connection,
                       name=sf.name, check=False, alg=alg, debug=sf.debug)
    return setup


def _poly(text, alg, line, col):
    try:
        return parse(text, alg)
    except ParseError as err:
        raise SetupFileError(err.message, line, col + err.column - 1) from None


def load(path: str | Path) -> tuple[SetupFile, BFVSetup]:
    """Read a setup file; the setup is built but not yet validated."""
    text = Path(path).read_text()
    sf = read_text(text)
    return sf, build(sf)
