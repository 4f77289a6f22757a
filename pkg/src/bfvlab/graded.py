"""Koszul signs, shuffles and the decalage sign.

Every sign used elsewhere in the package goes through this module.
Permutations are 0-based tuples ``perm`` with the convention that the
permuted sequence is ``(x[perm[0]], x[perm[1]], ...)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence


def koszul_sign(perm: Sequence[int], degs: Sequence[int]) -> int:
    """Sign picked up when x_1..x_n are rearranged into x_perm[0]..x_perm[n-1].

    Degrees are those of the original list.  Computed by bubble-sorting the
    permuted list back to the identity; each adjacent swap of a, b costs
    (-1)^{|a||b|}.
    """
    if len(perm) != len(degs):
        raise ValueError(f"permutation of length {len(perm)} for {len(degs)} degrees")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation: {tuple(perm)}")
    work = list(perm)
    sign = 1
    n = len(work)
    for i in range(n):
        for j in range(n - 1 - i):
            a, b = work[j], work[j + 1]
            if a > b:
                work[j], work[j + 1] = b, a
                if degs[a] % 2 and degs[b] % 2:
                    sign = -sign
    return sign


def unshuffles(r: int, s: int) -> list[tuple[int, ...]]:
    """All (r, s)-shuffles, ordered lexicographically by their first block."""
    if r < 0 or s < 0:
        raise ValueError("block sizes must be nonnegative")
    n = r + s
    out = []
    for first in combinations(range(n), r):
        rest = tuple(k for k in range(n) if k not in first)
        out.append(first + rest)
    return out


def decalage_sign(degs: Sequence[int]) -> int:
    """(-1)^{sum_i (n-i)|x_i|} with 1-based i."""
    n = len(degs)
    exponent = sum((n - i) * d for i, d in enumerate(degs, start=1))
    return -1 if exponent % 2 else 1


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Permutation obtained by applying ``inner`` first and then ``outer``.

    If y = (x[inner[k]])_k and z = (y[outer[k]])_k then z = (x[result[k]])_k.
    """
    return tuple(inner[k] for k in outer)


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    flag = getattr(x, "is_zero_matrix", None)
    if flag is not None:
        return bool(flag)
    return not x


def factorial_weight(k: int) -> Fraction:
    w = 1
    for j in range(2, k + 1):
        w *= j
    return Fraction(1, w)
