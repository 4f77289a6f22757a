"""Exact linear solving over the rationals, backed by sympy's DomainMatrix."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(v) -> "QQ":
    v = Fraction(v)
    return QQ(v.numerator, v.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def solve_columns(columns: Sequence[Mapping[Hashable, Fraction]],
                  rhs: Mapping[Hashable, Fraction]) -> list[Fraction] | None:
    """A solution of sum_k a_k columns[k] = rhs with free variables 0, or None.

    Columns and right-hand side are sparse vectors keyed by arbitrary row labels.
    """
    rows: dict = {}
    for col in columns:
        for key in col:
            rows.setdefault(key, len(rows))
    for key in rhs:
        if key not in rows:
            rows.setdefault(key, len(rows))
    n = len(columns)
    if not rows:
        return [Fraction(0)] * n
    dense = [[QQ(0)] * (n + 1) for _ in rows]
    for k, col in enumerate(columns):
        for key, v in col.items():
            dense[rows[key]][k] = _qq(v)
    for key, v in rhs.items():
        dense[rows[key]][n] = _qq(v)
    M = DomainMatrix(dense, (len(rows), n + 1), QQ)
    R, pivots = M.rref()
    if n in pivots:
        return None
    R = R.to_list()
    sol = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        sol[p] = _frac(R[r][n])
    return sol


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    M = DomainMatrix([[_qq(v) for v in r] for r in rows], (len(rows), len(rows[0])), QQ)
    return M.rank()
