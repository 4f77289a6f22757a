"""L-infinity[1] algebras: Jacobiators, Maurer-Cartan residuals, morphisms.

Operations m^n are graded symmetric of degree +1 on a graded space whose
elements are polynomials, vectors, or anything with +, unary -, and
multiplication by rationals.  Each structure carries a ``degree`` function
for homogeneous elements; m^0, when present, is an element.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Mapping, Sequence

from .graded import factorial_weight, is_zero, koszul_sign, unshuffles


@dataclass
class LInftyStructure:
    ops: Mapping[int, Any]
    degree: Callable
    sampler: Callable[[random.Random], Any] | None = None

    def op(self, n: int):
        return self.ops.get(n)

    def apply(self, n: int, args: Sequence):
        """m^n(args), or None when m^n is absent or returns zero."""
        f = self.ops.get(n)
        if f is None:
            return None
        val = f if n == 0 else f(list(args))
        if val is None or is_zero(val):
            return None
        return val

    @property
    def flat(self) -> bool:
        m0 = self.ops.get(0)
        return m0 is None or is_zero(m0)


@dataclass
class LInftyMorphism:
    components: Mapping[int, Callable] = field(default_factory=dict)

    def apply(self, n: int, args: Sequence):
        f = self.components.get(n)
        if f is None:
            return None
        val = f(list(args))
        if val is None or is_zero(val):
            return None
        return val


def _acc(total, val, coeff=1):
    if val is None:
        return total
    if coeff == -1:
        val = -val
    elif coeff != 1:
        val = Fraction(coeff) * val
    return val if total is None else total + val


def _nonzero(total):
    return None if total is None or is_zero(total) else total


def jacobiator(S: LInftyStructure, n: int, args: Sequence):
    """J^n(x_1..x_n); None stands for zero."""
    if len(args) != n:
        raise ValueError(f"arity {n} given {len(args)} arguments")
    degs = [S.degree(a) for a in args]
    total = None
    for r in range(n + 1):
        s = n - r
        if S.op(s + 1) is None or S.op(r) is None:
            continue
        for sigma in unshuffles(r, s):
            inner = S.apply(r, [args[k] for k in sigma[:r]])
            if inner is None:
                continue
            val = S.apply(s + 1, [inner] + [args[k] for k in sigma[r:]])
            total = _acc(total, val, koszul_sign(sigma, degs))
    return _nonzero(total)


@dataclass
class Report:
    ok: bool
    arity: int | None = None
    args: tuple = ()
    value: Any = None
    checked: int = 0

    def __bool__(self):
        return self.ok


def is_linfty(S: LInftyStructure, max_arity: int, trials: int, seed: int = 0) -> Report:
    """Evaluate J^n, n <= max_arity, on random homogeneous tuples."""
    rng = random.Random(seed)
    checked = 0
    for n in range(max_arity + 1):
        reps = 1 if n == 0 else trials
        for _ in range(reps):
            if n and S.sampler is None:
                raise ValueError("structure has no sampler for random elements")
            args = tuple(S.sampler(rng) for _ in range(n))
            val = jacobiator(S, n, args)
            checked += 1
            if val is not None:
                return Report(False, n, args, val, checked)
    return Report(True, checked=checked)


def mc_residual(S: LInftyStructure, mu, max_arity: int):
    """sum_{n <= max_arity} m^n(mu, ..., mu) / n!; None stands for zero.

    mu has degree 0 in the shifted grading (degree 1 before the shift).
    """
    total = None
    for n in range(max_arity + 1):
        val = S.apply(n, [mu] * n)
        if val is not None:
            total = _acc(total, val, factorial_weight(n))
    return _nonzero(total)


def _ordered_partitions(n: int, k: int):
    """Assignments of 0..n-1 to k nonempty blocks; yields the concatenated order and block sizes."""
    for labels in product(range(k), repeat=n):
        blocks = [[j for j in range(n) if labels[j] == b] for b in range(k)]
        if all(blocks):
            yield tuple(j for blk in blocks for j in blk), [len(b) for b in blocks]


def morphism_defect(F: LInftyMorphism, src: LInftyStructure, dst: LInftyStructure, n: int,
                    args: Sequence):
    """Arity-n component of Q_dst F - F Q_src in the coalgebra picture; None for zero."""
    if len(args) != n:
        raise ValueError(f"arity {n} given {len(args)} arguments")
    degs = [src.degree(a) for a in args]
    total = None
    # Q_dst after F: sum_k 1/k! m^k(F(B_1), ..., F(B_k)) over ordered block decompositions
    for k in range(1, n + 1):
        if dst.op(k) is None:
            continue
        w = factorial_weight(k)
        for order, sizes in _ordered_partitions(n, k):
            outs = []
            pos = 0
            for size in sizes:
                v = F.apply(size, [args[j] for j in order[pos:pos + size]])
                pos += size
                if v is None:
                    break
                outs.append(v)
            else:
                val = dst.apply(k, outs)
                if val is not None:
                    total = _acc(total, val, koszul_sign(order, degs) * w)
    if n == 0 and dst.op(0) is not None:
        total = _acc(total, dst.apply(0, []))
    # F after Q_src
    for r in range(n + 1):
        s = n - r
        for sigma in unshuffles(r, s):
            inner = src.apply(r, [args[k] for k in sigma[:r]])
            if inner is None:
                continue
            val = F.apply(s + 1, [inner] + [args[k] for k in sigma[r:]])
            total = _acc(total, val, -koszul_sign(sigma, degs))
    return _nonzero(total)


def from_dgla(d: Callable | None, bracket: Callable, degree: Callable, **kw) -> LInftyStructure:
    """L-infinity[1] structure on g[1] from a DGLA (g, d, [,]).

    ``degree`` is the degree in g; the shifted degree is one less and
    m^2(x, y) = (-1)^{|x| - 1} [x, y].
    """
    def shifted(x):
        return degree(x) - 1

    def m2(xs):
        x, y = xs
        val = bracket(x, y)
        return val if shifted(x) % 2 == 0 else -val

    ops = {2: m2}
    if d is not None:
        ops[1] = lambda xs: d(xs[0])
    return LInftyStructure(ops, shifted, **kw)


# tabulated structures -------------------------------------------------------

class Vec:
    """Vector on a finite graded basis: a dict index -> Fraction."""
    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {k: Fraction(v) for k, v in (c or {}).items() if v}

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return Vec(out)

    def __neg__(self):
        return Vec({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, a):
        return Vec({k: a * v for k, v in self.c.items()})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, Vec) and self.c == other.c

    def __repr__(self):
        return f"Vec({dict(sorted(self.c.items()))})"


def tabulated(degrees: Sequence[int], table: Mapping[int, Mapping[tuple, Mapping[int, Any]]],
              coefficient_range: int = 3) -> LInftyStructure:
    """Structure given by structure constants on a graded basis.

    ``table[n][(i_1..i_n)]`` is the output vector of m^n on basis elements
    with sorted indices; other orders follow by graded symmetry.  Constants
    must be consistent with the degrees (output degree = sum + 1).
    """
    degrees = list(degrees)

    def degree(v: Vec):
        ds = {degrees[k] for k in v.c}
        if len(ds) > 1:
            raise ValueError("inhomogeneous vector")
        return ds.pop() if ds else 0

    def make(n, consts):
        def op(xs):
            out = Vec()
            for keys in product(*[sorted(x.c) for x in xs]):
                perm = sorted(range(n), key=lambda j: keys[j])
                sorted_keys = tuple(keys[j] for j in perm)
                entry = consts.get(sorted_keys)
                if not entry:
                    continue
                coeff = Fraction(1)
                for x, key in zip(xs, keys):
                    coeff *= x.c[key]
                sign = koszul_sign(perm, [degrees[k] for k in keys])
                out = out + (sign * coeff) * Vec(entry)
            return out
        return op

    ops = {n: make(n, consts) for n, consts in table.items() if n > 0}
    if 0 in table:
        ops[0] = Vec(table[0])

    def sampler(rng):
        d = rng.choice(sorted(set(degrees)))
        idx = [k for k, dk in enumerate(degrees) if dk == d]
        picks = rng.sample(idx, rng.randint(1, len(idx)))
        vals = [v for v in range(-coefficient_range, coefficient_range + 1) if v]
        return Vec({k: rng.choice(vals) for k in picks})

    return LInftyStructure(ops, degree, sampler=sampler)
