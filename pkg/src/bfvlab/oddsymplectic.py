"""Multivector fields as functions on a shifted cotangent bundle.

Coordinates x (base, degree 0), y (fiber, 0), c (ghost, +1), b (ghost
momentum, -1) each get a conjugate momentum of degree 1 - |z|, named by
prefixing ``p``: px, py (degree 1), pc (degree 0), pb (degree 2).  The
bracket is the canonical odd one, normalized so that [pz, z] = 1.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .superpoly import Generator, GeneratorTable, SuperPoly, mono_lderiv, mono_rderiv

Connection = Mapping[tuple[int, int, int], SuperPoly]


class PhaseAlgebra(GeneratorTable):
    """Generator table for base dimension s and fiber rank e, with momenta."""

    def __init__(self, s: int, e: int):
        if s < 0 or e < 0:
            raise ValueError("dimensions must be nonnegative")
        self.s, self.e = s, e
        coords = ([(f"x{a}", 0) for a in range(1, s + 1)]
                  + [(f"y{j}", 0) for j in range(1, e + 1)]
                  + [(f"c{j}", 1) for j in range(1, e + 1)]
                  + [(f"b{j}", -1) for j in range(1, e + 1)])
        moms = [(f"p{name}", 1 - d) for name, d in coords]
        super().__init__([Generator(n, d) for n, d in coords + moms])
        self.coordinates = tuple(n for n, _ in coords)
        self.momenta = tuple(n for n, _ in moms)
        self.pairs = tuple((self.index[z], self.index["p" + z]) for z in self.coordinates)
        self.xs = tuple(f"x{a}" for a in range(1, s + 1))
        self.ys = tuple(f"y{j}" for j in range(1, e + 1))
        self.cs = tuple(f"c{j}" for j in range(1, e + 1))
        self.bs = tuple(f"b{j}" for j in range(1, e + 1))
        self.fiber = self.cs + self.bs + tuple("p" + n for n in self.cs + self.bs)
        self._fiber_idx = tuple(self.index[n] for n in self.fiber)
        self._c = tuple(self.index[n] for n in self.cs)
        self._b = tuple(self.index[n] for n in self.bs)
        self._pc = tuple(self.index["p" + n] for n in self.cs)
        self._pb = tuple(self.index["p" + n] for n in self.bs)

    def __repr__(self):
        return f"PhaseAlgebra(s={self.s}, e={self.e})"

    def __call__(self, name: str, power: int = 1) -> SuperPoly:
        return SuperPoly.gen(self, name, power)

    def const(self, value) -> SuperPoly:
        return SuperPoly.const(self, value)

    def zero(self) -> SuperPoly:
        return SuperPoly(self)

    def bidegree(self, mono) -> tuple[int, int]:
        m = sum(mono[k] for k in self._c) - sum(mono[k] for k in self._pc)
        n = sum(mono[k] for k in self._b) - sum(mono[k] for k in self._pb)
        return m, n

    def fiber_count(self, mono) -> int:
        return sum(mono[k] for k in self._fiber_idx)

    def pairing(self) -> SuperPoly:
        """The fibre pairing bivector G = sum_j pc_j pb_j."""
        out = self.zero()
        for c, b in zip(self.cs, self.bs):
            out = out + self("p" + c) * self("p" + b)
        return out


def sn_bracket(A: SuperPoly, B: SuperPoly) -> SuperPoly:
    """[A, B] = sum_z (A d/dpz)(d/dz B) - (A d/dz)(d/dpz B), derivatives on A from the right."""
    table = A.table
    if B.table is not table:
        raise ValueError("multivectors over different phase algebras")
    if not isinstance(table, PhaseAlgebra):
        raise ValueError("bracket needs a PhaseAlgebra")
    if not A.terms or not B.terms:
        return SuperPoly(table)
    ua, ub = A.used(), B.used()
    jobs = []
    for z, pz in table.pairs:
        if pz in ua and z in ub:
            jobs.append((pz, z, 1))
        if z in ua and pz in ub:
            jobs.append((z, pz, -1))
    out: dict = {}
    mul = table.mono_mul
    for ka, kb, sgn in jobs:
        left = []
        for ma, ca in A.terms.items():
            r = mono_rderiv(table, ka, ma)
            if r is not None:
                left.append((r[1], r[0] * ca * sgn))
        right = []
        for mb, cb in B.terms.items():
            r = mono_lderiv(table, kb, mb)
            if r is not None:
                right.append((r[1], r[0] * cb))
        for m1, c1 in left:
            for m2, c2 in right:
                r = mul(m1, m2)
                if r is None:
                    continue
                v = out.get(r[1], 0) + (c1 * c2 if r[0] > 0 else -c1 * c2)
                if v:
                    out[r[1]] = v
                else:
                    del out[r[1]]
    return SuperPoly(table, out)


def shifted_degree(A: SuperPoly) -> int:
    """Degree of A in V[1], the graded Lie algebra of the bracket."""
    return A.degree() - 1


def l1_degree(A: SuperPoly) -> int:
    """Degree of A in V[2], where the bracket becomes an L-infinity[1] operation."""
    return A.degree() - 2


def bidegree_component(A: SuperPoly, at_least: tuple[int, int]) -> SuperPoly:
    m0, n0 = at_least
    bideg = A.table.bidegree
    return A.filter(lambda mono: bideg(mono)[0] >= m0 and bideg(mono)[1] >= n0)


def bidegrees(A: SuperPoly) -> set[tuple[int, int]]:
    return {A.table.bidegree(m) for m in A.terms}


def _check_connection(alg: PhaseAlgebra, gamma: Connection):
    for (a, r, s), coeff in gamma.items():
        if not (1 <= a <= alg.s and 1 <= r <= alg.e and 1 <= s <= alg.e):
            raise ValueError(f"connection index ({a}, {r}, {s}) out of range")
        if coeff.table is not alg:
            raise ValueError("connection coefficient over a different algebra")


def lift_images(alg: PhaseAlgebra, gamma: Connection) -> dict[str, SuperPoly]:
    """px_a -> px_a + G^s_{ar} c_s pc_r - G^s_{ar} b_r pb_s."""
    _check_connection(alg, gamma)
    images = {}
    for (a, r, s), g in sorted(gamma.items()):
        if not g:
            continue
        name = f"px{a}"
        corr = g * alg(f"c{s}") * alg(f"pc{r}") - g * alg(f"b{r}") * alg(f"pb{s}")
        images[name] = images.get(name, alg(name)) + corr
    return images


def horizontal_lift(P: SuperPoly, gamma: Connection) -> SuperPoly:
    alg = P.table
    return P.substitute(lift_images(alg, gamma))


class LiftContraction:
    """Contraction of (V(E-doubled), [G, -]) onto (V(E), 0) for a connection.

    H is the Koszul homotopy K = sum c_j d/dpb_j + b_j d/dpc_j divided by the
    total fibre degree, conjugated by the algebra isomorphism that sends
    px_a to its horizontal lift.
    """

    def __init__(self, alg: PhaseAlgebra, gamma: Connection | None = None):
        self.alg = alg
        self.gamma = dict(gamma or {})
        self.G = alg.pairing()
        self._up = lift_images(alg, self.gamma)
        self._down = {k: 2 * alg(k) - v for k, v in self._up.items()}

    def Q(self, A: SuperPoly) -> SuperPoly:
        return sn_bracket(self.G, A)

    def iota(self, A: SuperPoly) -> SuperPoly:
        return A.substitute(self._up)

    def pr(self, A: SuperPoly) -> SuperPoly:
        return A.set_to_zero(self.alg.fiber)

    def _koszul(self, A: SuperPoly) -> SuperPoly:
        alg = self.alg
        groups: dict[int, dict] = {}
        for mono, c in A.terms.items():
            n = alg.fiber_count(mono)
            if n:
                groups.setdefault(n, {})[mono] = c
        out = alg.zero()
        for n, terms in groups.items():
            part = SuperPoly(alg, terms)
            acc = alg.zero()
            for c, b in zip(alg.cs, alg.bs):
                acc = acc + alg(c) * part.partial("p" + b) + alg(b) * part.partial("p" + c)
            out = out + acc.scale(Fraction(1, n))
        return out

    def H(self, A: SuperPoly) -> SuperPoly:
        if not self._up:
            return self._koszul(A)
        return self._koszul(A.substitute(self._down)).substitute(self._up)


def curvature_defect(X: SuperPoly, Y: SuperPoly, gamma: Connection) -> SuperPoly:
    C = LiftContraction(X.table, gamma)
    return C.H(sn_bracket(C.iota(X), C.iota(Y)))


class NotPoissonError(ValueError):
    def __init__(self, residual: SuperPoly):
        super().__init__(f"[P, P] = {residual} is not zero")
        self.residual = residual


def rothstein_lift(P: SuperPoly, gamma: Connection | None = None) -> SuperPoly:
    """G + lambda(P): push the Maurer-Cartan element P through the transfer morphism.

    A tree with v vertices lands in bidegree (v, v), so trees with more
    vertices than the fiber rank contribute nothing.
    """
    from .trees import Contraction, TransferInput, push_mc

    alg = P.table
    square = sn_bracket(P, P)
    if square:
        raise NotPoissonError(square)
    C = LiftContraction(alg, gamma)
    contraction = Contraction(d=C.Q, h=C.H, i=C.iota, p=C.pr)
    L = TransferInput(mu2=sn_mu2, degree=l1_degree)
    return C.G + push_mc(contraction, L, P, max_vertices=alg.e)


def sn_mu2(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    """Binary operation of the L-infinity[1] algebra V[2] attached to (V[1], [,])."""
    out = a.zero()
    for d, part in a.homogeneous_parts().items():
        term = sn_bracket(part, b)
        out = out + (term if d % 2 == 0 else -term)
    return out
