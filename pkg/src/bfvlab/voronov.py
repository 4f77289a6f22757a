"""Higher derived brackets of a degree-1 element in a V-algebra.

Sign table for the odd-symplectic model (bracket normalized by [px, x] = 1):

    P = px1*px2 (the bivector d/dx1 ^ d/dx2)
    [P, x1]         = -px2
    D^2_P(x1, x2)   = [[P, x1], x2] = -1
    decalage        : [f, g]_P = (-1)^{|f|+1} D^2_P(f, g), so [x1, x2]_P = +1

In general D^2_P(f, g) = -P^{ab} df/dz^a dg/dz^b for functions f, g, where
P = sum_{a<b} P^{ab} pz_a pz_b.  With this convention D^k_Pi on fiber
directions, on (fiber directions, f) and on (fiber directions, f, g)
reproduce the restricted structure maps with signs (-1)^k, (-1)^k and
(-1)^(k-1) respectively.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .linfty import LInftyStructure
from .oddsymplectic import PhaseAlgebra, shifted_degree, sn_bracket
from .superpoly import SuperPoly


@dataclass
class VAlgebra:
    """Graded Lie algebra with an abelian subalgebra cut out by an idempotent projection."""
    bracket: Callable
    projection: Callable
    degree: Callable
    injection: Callable = staticmethod(lambda a: a)
    sampler: Callable | None = None


def derived_bracket(V: VAlgebra, P, n: int, args: Sequence):
    """Pi_a [[...[P, x_1], ...], x_n]."""
    if P and V.degree(P) != 1:
        raise ValueError(f"derived brackets need a degree-1 element, got degree {V.degree(P)}")
    if len(args) != n:
        raise ValueError(f"arity {n} given {len(args)} arguments")
    x = P
    for a in args:
        x = V.bracket(x, V.injection(a))
        if not x:
            return V.projection(x)
    return V.projection(x)


def derived_structure(V: VAlgebra, P, max_arity: int) -> LInftyStructure:
    """The family D^0_P .. D^max_arity_P as an L-infinity[1] structure on the abelian part."""
    def make(n):
        return lambda xs: derived_bracket(V, P, n, xs)

    ops = {n: make(n) for n in range(1, max_arity + 1)}
    ops[0] = derived_bracket(V, P, 0, [])
    return LInftyStructure(ops, V.degree, sampler=V.sampler)


def random_homogeneous(rng: random.Random, table, names: Sequence[str], max_factors: int = 3,
                       terms: int = 2) -> SuperPoly:
    """A few random monomials of one degree with coefficients in {-3..3} minus 0."""
    coeffs = [c for c in range(-3, 4) if c]

    def mono():
        while True:
            k = rng.randint(0, max_factors)
            m = SuperPoly.const(table, rng.choice(coeffs))
            for _ in range(k):
                m = m * SuperPoly.gen(table, rng.choice(names))
            if m:
                return m

    first = mono()
    d = first.degree()
    out = first
    for _ in range(8 * terms):
        if len(out) >= terms:
            break
        m = mono()
        if m.degree() == d:
            out = out + m
    return out if out else first


def sn_valgebra(alg: PhaseAlgebra, abelian: Sequence[str], killed: Sequence[str],
                max_factors: int = 3) -> VAlgebra:
    """(V[1], polynomials in ``abelian``, set_to_zero(killed)) for the bracket on V."""
    abelian = tuple(abelian)
    killed = tuple(killed)

    def sampler(rng):
        return random_homogeneous(rng, alg, abelian, max_factors)

    return VAlgebra(
        bracket=sn_bracket,
        projection=lambda A: A.set_to_zero(killed),
        degree=shifted_degree,
        sampler=sampler,
    )


def vector_bundle_valgebra(alg: PhaseAlgebra) -> VAlgebra:
    """V(E) with abelian part Gamma(wedge E): polynomials in x and py, projection y = px = 0."""
    return sn_valgebra(alg, alg.xs + tuple("p" + y for y in alg.ys),
                       tuple("p" + x for x in alg.xs) + alg.ys)


def to_vector_fields(alg: PhaseAlgebra, a: SuperPoly) -> SuperPoly:
    """Rename ghosts c_j to fiber momenta py_j (same degree, same order)."""
    return a.substitute({c: alg("p" + y) for c, y in zip(alg.cs, alg.ys)})


def to_ghosts(alg: PhaseAlgebra, a: SuperPoly) -> SuperPoly:
    return a.substitute({"p" + y: alg(c) for c, y in zip(alg.cs, alg.ys)})


class NotCoisotropic(ValueError):
    def __init__(self, residue: SuperPoly):
        super().__init__(f"pr(Pi) = {residue} is not zero")
        self.residue = residue


def shla_brackets(setup, k: int, args: Sequence[SuperPoly]) -> SuperPoly:
    """D^k_Pi on sections of the exterior normal bundle, written in x and c."""
    alg = setup.alg
    V = vector_bundle_valgebra(alg)
    residue = V.projection(setup.Pi)
    if residue:
        raise NotCoisotropic(residue)
    allowed = {alg.index[n] for n in alg.xs + alg.cs}
    for a in args:
        if not a.used() <= allowed:
            raise ValueError(f"{a} is not a polynomial in x and c")
    converted = [to_vector_fields(alg, a) for a in args]
    return to_ghosts(alg, derived_bracket(V, setup.Pi, k, converted))
