"""Random finite filtered complexes with contraction data, as exact matrices.

Basis vectors carry a degree and a filtration level.  The unperturbed
complex is a sum of a cohomology part and acyclic pairs b -> a.  The full
differential is phi (d + E) phi^-1, where E joins cohomology vectors of
degree 0 and 1 across levels and phi is unipotent and strictly raises the
level; so D - d raises the level and (-h (D - d)) is nilpotent.  Everything
is then conjugated by a random invertible map preserving degree and
filtration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from sympy import Matrix, Rational, eye, zeros

from .trees import Contraction


@dataclass
class FilteredComplex:
    contraction: Contraction
    D: Matrix
    d: Matrix
    degrees: list
    levels: list
    small_dim: int

    @property
    def D_R(self):
        return lambda v: (self.D - self.d) * v

    def basis(self):
        n = len(self.degrees)
        return [eye(n)[:, k] for k in range(n)]

    def small_basis(self):
        return [eye(self.small_dim)[:, k] for k in range(self.small_dim)]


def _rand(rng, lo=-2, hi=2):
    return Rational(rng.randint(lo, hi))


def random_filtered_complex(seed: int, dim: int = 8, levels: int = 3) -> FilteredComplex:
    if dim < 2 or levels < 1:
        raise ValueError("need dim >= 2 and at least one filtration level")
    rng = random.Random(seed)
    n_pairs = rng.randint(1, max(1, (dim - 2) // 2))
    n_small = dim - 2 * n_pairs
    deg, lev = [], []
    for _ in range(n_small):
        k = rng.choice([0, 0, 1, 1, 2])
        deg.append(k)
        # degree-0 classes sit low and degree-1 classes high, so E has room
        if levels > 1 and k == 0:
            lev.append(rng.randrange(levels - 1))
        elif levels > 1 and k == 1:
            lev.append(rng.randrange(1, levels))
        else:
            lev.append(rng.randrange(levels))
    pairs = []
    for _ in range(n_pairs):
        d_b = rng.randint(-1, 1)
        L = rng.randrange(levels)
        a = len(deg)
        deg.append(d_b + 1)
        lev.append(L)
        b = len(deg)
        deg.append(d_b)
        lev.append(L)
        pairs.append((a, b))
    n = len(deg)

    d0 = zeros(n, n)
    h0 = zeros(n, n)
    for a, b in pairs:
        d0[a, b] = 1
        h0[b, a] = 1
    i0 = zeros(n, n_small)
    p0 = zeros(n_small, n)
    for k in range(n_small):
        i0[k, k] = 1
        p0[k, k] = 1

    # a level-raising differential between cohomology vectors of degree 0 and 1;
    # it squares to zero and commutes with d0, so it survives to the transfer
    E = zeros(n, n)
    for r in range(n_small):
        for c in range(n_small):
            if deg[c] == 0 and deg[r] == 1 and lev[r] > lev[c] and rng.random() < 0.7:
                E[r, c] = _rand(rng)

    # unipotent phi: column c may receive entries from rows of strictly higher level
    N = zeros(n, n)
    for r in range(n):
        for c in range(n):
            if lev[r] > lev[c] and deg[r] == deg[c] and rng.random() < 0.6:
                N[r, c] = _rand(rng)
    phi = eye(n) + N
    D0 = phi * (d0 + E) * phi.inv()

    # random filtration- and degree-preserving change of basis
    g = zeros(n, n)
    for r in range(n):
        for c in range(n):
            if deg[r] != deg[c]:
                continue
            if r == c:
                g[r, c] = Rational(rng.choice([-2, -1, 1, 2, 3]))
            elif lev[r] > lev[c] or (lev[r] == lev[c] and r > c):
                if rng.random() < 0.5:
                    g[r, c] = _rand(rng)
    gi = g.inv()
    d = g * d0 * gi
    h = g * h0 * gi
    i = g * i0
    p = p0 * gi
    D = g * D0 * gi
    C = Contraction(d=lambda v: d * v, h=lambda v: h * v, i=lambda v: i * v, p=lambda v: p * v)
    return FilteredComplex(C, D, d, deg, lev, n_small)
