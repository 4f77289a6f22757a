"""The BFV complex of a coisotropic zero section in a trivial vector bundle.

Base coordinates x1..xs, fiber coordinates y1..ye; the ghosts c_j (degree 1)
and ghost momenta b_j (degree -1) stand for the fiber directions and their
duals.  A BFV element is a polynomial in x, y, c, b; its bigrade is
(c-count, b-count).  The bracket comes from the lifted bivector
Pi_hat = G + iota(Pi) + Delta through

    [F, K]_BFV = (-1)^{|F|+1} [[Pi_hat, F], K].

A section mu of the bundle (polynomials mu_j(x)) enters through the shifted
tautological section sum_j (y_j + mu_j) c_j, whose zero set is the graph
y = -mu.  All homotopies for the shifted differential are the plain ones
conjugated by the translation y -> y + mu.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import linalg
from .oddsymplectic import (NotPoissonError, PhaseAlgebra, horizontal_lift,
                            rothstein_lift, sn_bracket)
from .superpoly import SuperPoly, parse
from .trees import Contraction, TransferInput


class SetupError(ValueError):
    pass


class NotCoisotropicError(SetupError):
    def __init__(self, offending: Mapping[tuple[str, str], SuperPoly]):
        items = ", ".join(f"Pi[{a},{b}]|S = {v}" for (a, b), v in offending.items())
        super().__init__(f"zero section is not coisotropic: {items}")
        self.offending = dict(offending)


class PreconditionError(ValueError):
    pass


class InternalError(RuntimeError):
    """An identity that holds for all valid inputs failed."""


# construction -----------------------------------------------------------------

def bracket_with(Z: SuperPoly, F: SuperPoly, K: SuperPoly) -> SuperPoly:
    """(-1)^{|F|+1} [[Z, F], K], extended additively over the degrees of F."""
    out = F.zero()
    for d, part in F.homogeneous_parts().items():
        inner = sn_bracket(Z, part)
        if not inner:
            continue
        t = sn_bracket(inner, K)
        out = out + (t if d % 2 else -t)
    return out


def bivector_coefficient(P: SuperPoly, a: str, b: str) -> SuperPoly:
    """Coefficient of pa*pb in the bivector P (so P^{ab} = -P^{ba})."""
    alg = P.table
    return P.rpartial("p" + b).rpartial("p" + a).set_to_zero(alg.momenta)


def _as_poly(alg, value) -> SuperPoly:
    if isinstance(value, SuperPoly):
        if value.table is not alg:
            raise ValueError("coefficient over a different algebra")
        return value
    if isinstance(value, (int, Fraction)):
        return alg.const(value)
    if isinstance(value, str):
        return parse(value, alg)
    raise TypeError(f"cannot read {value!r} as a polynomial")


@dataclass(eq=False)
class BFVSetup:
    alg: PhaseAlgebra
    Pi: SuperPoly
    gamma: dict = field(default_factory=dict)
    name: str = ""
    debug: dict = field(default_factory=dict)

    @property
    def s(self):
        return self.alg.s

    @property
    def e(self):
        return self.alg.e

    @cached_property
    def Pihat(self) -> SuperPoly:
        return rothstein_lift(self.Pi, self.gamma)

    @cached_property
    def lifted_Pi(self) -> SuperPoly:
        return horizontal_lift(self.Pi, self.gamma)

    @cached_property
    def Delta(self) -> SuperPoly:
        return self.Pihat - self.alg.pairing() - self.lifted_Pi

    @cached_property
    def charge(self) -> "Charge":
        return build_charge(self)

    @cached_property
    def omega0(self) -> SuperPoly:
        alg = self.alg
        out = alg.zero()
        for y, c in zip(alg.ys, alg.cs):
            out = out + alg(y) * alg(c)
        return out

    @cached_property
    def _pair_cache(self) -> dict:
        return {}

    def bracket(self, F: SuperPoly, K: SuperPoly) -> SuperPoly:
        """[F, K]_BFV, memoized on pairs of monomials."""
        alg = self.alg
        cache = self._pair_cache
        out: dict = {}
        for m1, c1 in F.terms.items():
            for m2, c2 in K.terms.items():
                val = cache.get((m1, m2))
                if val is None:
                    val = bracket_with(self.Pihat, SuperPoly._raw(alg, {m1: Fraction(1)}),
                                       SuperPoly._raw(alg, {m2: Fraction(1)})).terms
                    cache[(m1, m2)] = val
                c = c1 * c2
                for m, v in val.items():
                    t = out.get(m, 0) + c * v
                    if t:
                        out[m] = t
                    else:
                        out.pop(m, None)
        return SuperPoly._raw(alg, out)

    def poisson(self, f: SuperPoly, g: SuperPoly) -> SuperPoly:
        """Poisson bracket of functions of x and y."""
        return bracket_with(self.Pi, f, g)

    def element(self, text) -> SuperPoly:
        return _as_poly(self.alg, text)

    def __repr__(self):
        return f"BFVSetup({self.name or 'unnamed'}, s={self.s}, e={self.e})"


def coisotropy_defects(alg: PhaseAlgebra, Pi: SuperPoly) -> dict:
    """Nonzero Pi^{ij}|_{y=0} for fiber indices i < j."""
    bad = {}
    for i, yi in enumerate(alg.ys):
        for yj in alg.ys[i + 1:]:
            v = bivector_coefficient(Pi, yi, yj).set_to_zero(alg.ys)
            if v:
                bad[(yi, yj)] = v
    return bad


def make_setup(s: int, e: int, poisson: Mapping, connection: Mapping | None = None,
               name: str = "", check: bool = True, alg: PhaseAlgebra | None = None,
               debug: Mapping | None = None) -> BFVSetup:
    """Build and validate a setup.

    ``poisson`` maps pairs of coordinate names (a, b) to the coefficient
    Pi^{ab}; ``connection`` maps (alpha, r, s) to Gamma^s_{alpha r}.
    Coefficients may be SuperPolys, numbers or polynomial strings.
    """
    if alg is None:
        alg = PhaseAlgebra(s, e)
    elif (alg.s, alg.e) != (s, e):
        raise SetupError("algebra dimensions do not match")
    base = set(alg.xs + alg.ys)
    Pi = alg.zero()
    for (a, b), coeff in poisson.items():
        if a not in base or b not in base:
            raise SetupError(f"Poisson index ({a}, {b}) is not a coordinate")
        if a == b:
            raise SetupError(f"diagonal Poisson entry ({a}, {a})")
        f = _as_poly(alg, coeff)
        if not f.used() <= {alg.index[n] for n in base}:
            raise SetupError(f"Poisson coefficient {f} must depend on x and y only")
        Pi = Pi + f * alg("p" + a) * alg("p" + b)
    gamma = {}
    for key, coeff in (connection or {}).items():
        g = _as_poly(alg, coeff)
        if not g.used() <= {alg.index[n] for n in base}:
            raise SetupError(f"connection coefficient {g} must depend on x and y only")
        if g:
            gamma[tuple(int(k) for k in key)] = g
    for a, r, t in gamma:
        if not (1 <= a <= s and 1 <= r <= e and 1 <= t <= e):
            raise SetupError(f"connection index ({a}, {r}, {t}) out of range")
    setup = BFVSetup(alg, Pi, gamma, name, dict(debug or {}))
    if check:
        validate(setup)
    return setup


def validate(setup: BFVSetup):
    square = sn_bracket(setup.Pi, setup.Pi)
    if square:
        raise NotPoissonError(square)
    bad = coisotropy_defects(setup.alg, setup.Pi)
    if bad:
        raise NotCoisotropicError(bad)
    alg = setup.alg
    # modulo positive b-count the bracket is the fiber pairing on ghosts and
    # the Poisson bracket on functions (exactly so when the connection is flat 0)
    for j, c in enumerate(alg.cs):
        for k, b in enumerate(alg.bs):
            want = alg.const(1 if j == k else 0)
            if b_component(setup.bracket(alg(c), alg(b)), 0) != want:
                raise InternalError(f"[{c}, {b}]_BFV does not reduce to {want}")
    funcs = alg.xs + alg.ys
    for u in funcs:
        for v in funcs:
            got = b_component(setup.bracket(alg(u), alg(v)), 0)
            if got != setup.poisson(alg(u), alg(v)):
                raise InternalError(f"[{u}, {v}]_BFV does not reduce to the Poisson bracket")


# bigrading ----------------------------------------------------------------------

def bigrade_parts(X: SuperPoly) -> dict[tuple[int, int], SuperPoly]:
    bideg = X.table.bidegree
    groups: dict = {}
    for mono, c in X.terms.items():
        groups.setdefault(bideg(mono), {})[mono] = c
    return {k: SuperPoly(X.table, v) for k, v in sorted(groups.items())}


def by_b_count(X: SuperPoly) -> dict[int, SuperPoly]:
    out: dict = {}
    for (m, n), part in bigrade_parts(X).items():
        out[n] = out[n] + part if n in out else part
    return out


def b_component(X: SuperPoly, k: int) -> SuperPoly:
    alg = X.table
    return X.filter(lambda m: alg.bidegree(m)[1] == k)


# delta and its homotopy ------------------------------------------------------------

def delta(setup: BFVSetup, X: SuperPoly, mu: Sequence[SuperPoly] | None = None) -> SuperPoly:
    """sum_j (y_j + mu_j) d/db_j from the left."""
    alg = setup.alg
    out = alg.zero()
    for j, (y, b) in enumerate(zip(alg.ys, alg.bs)):
        d = X.partial(b)
        if not d:
            continue
        coeff = alg(y)
        if mu is not None and mu[j]:
            coeff = coeff + mu[j]
        out = out + coeff * d
    return out


def homotopy_h(setup: BFVSetup, X: SuperPoly) -> SuperPoly:
    """sum_j b_j d/dy_j divided by (y-degree + b-count), monomial by monomial."""
    alg = setup.alg
    yk = [alg.index[y] for y in alg.ys]
    bk = [alg.index[b] for b in alg.bs]
    groups: dict = {}
    for mono, c in X.terms.items():
        n = sum(mono[k] for k in yk) + sum(mono[k] for k in bk)
        if n:
            groups.setdefault(n, {})[mono] = c
    out = alg.zero()
    for n, terms in groups.items():
        part = SuperPoly(alg, terms)
        acc = alg.zero()
        for y, b in zip(alg.ys, alg.bs):
            acc = acc + alg(b) * part.partial(y)
        out = out + acc.scale(Fraction(1, n))
    return out


def i_star(setup: BFVSetup, X: SuperPoly) -> SuperPoly:
    """Restriction to the zero section: y = 0, b = 0."""
    return X.set_to_zero(setup.alg.ys + setup.alg.bs)


def p_star(setup: BFVSetup, X: SuperPoly) -> SuperPoly:
    """Pull-back along the projection: polynomials in x and c are already BFV elements."""
    allowed = {setup.alg.index[n] for n in setup.alg.xs + setup.alg.cs}
    if not X.used() <= allowed:
        raise ValueError(f"{X} is not a polynomial in x and c")
    return X


def _translation(setup, mu, sign):
    alg = setup.alg
    return {y: alg(y) + (m if sign > 0 else -m) for y, m in zip(alg.ys, mu) if m}


def h_mu(setup: BFVSetup, X: SuperPoly, mu: Sequence[SuperPoly]) -> SuperPoly:
    """Homotopy for the shifted differential: h conjugated by y -> y + mu."""
    fwd = _translation(setup, mu, +1)
    if not fwd:
        return homotopy_h(setup, X)
    back = _translation(setup, mu, -1)
    return homotopy_h(setup, X.substitute(back)).substitute(fwd)


def i_mu_star(setup: BFVSetup, X: SuperPoly, mu: Sequence[SuperPoly]) -> SuperPoly:
    """Restriction to the graph y = -mu, b = 0."""
    back = _translation(setup, mu, -1)
    return i_star(setup, X.substitute(back) if back else X)


def bfv_contraction(setup: BFVSetup) -> Contraction:
    return Contraction(d=lambda X: delta(setup, X), h=lambda X: homotopy_h(setup, X),
                       i=lambda X: p_star(setup, X), p=lambda X: i_star(setup, X))


# charge ----------------------------------------------------------------------------

@dataclass
class Charge:
    levels: list

    @property
    def total(self) -> SuperPoly:
        out = self.levels[0].zero()
        for L in self.levels:
            out = out + L
        return out


def _close(setup: BFVSetup, start: SuperPoly, mu, shifts: Mapping | None = None) -> list:
    """Add corrections -h_mu(R_k) until the square vanishes; R_0 must already restrict to 0.

    ``shifts[k]`` adds delta_mu(shifts[k]) to the level-k correction.
    """
    levels = [start]
    total = start
    for k in range(setup.e + 2):
        square = setup.bracket(total, total)
        if not square and not (shifts and any(j > k for j in shifts)):
            return levels
        comps = by_b_count(square)
        if comps and min(comps) < k:
            raise InternalError(f"square has b-count {min(comps)} component after level {k}")
        corr = total.zero()
        R = comps.get(k)
        if R is not None:
            R = R.scale(Fraction(1, 2))
            if k and delta(setup, R, mu):
                raise InternalError(f"delta R_{k} is not zero")
            corr = -h_mu(setup, R, mu)
            if delta(setup, corr, mu) != -R:
                raise InternalError(f"correction at level {k + 1} does not kill R_{k}")
        if shifts and shifts.get(k + 1):
            corr = corr + delta(setup, shifts[k + 1], mu)
        levels.append(corr)
        total = total + corr
    raise InternalError("corrections did not terminate within the fiber rank")


def build_charge(setup: BFVSetup) -> Charge:
    mu = [setup.alg.zero()] * setup.e
    levels = _close(setup, setup.omega0, mu)
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    ch = Charge(levels)
    if setup.bracket(ch.total, ch.total):
        raise InternalError("[Omega, Omega] is not zero")
    return ch


def delta1(setup: BFVSetup, a: SuperPoly) -> SuperPoly:
    """Lie algebroid differential on polynomials in x and c."""
    alg = setup.alg
    p_star(setup, a)
    out = alg.zero()
    for i, (yi, ci) in enumerate(zip(alg.ys, alg.cs)):
        for x in alg.xs:
            coeff = bivector_coefficient(setup.Pi, yi, x).set_to_zero(alg.ys)
            if coeff:
                out = out + alg(ci) * coeff * a.partial(x)
    for k, (yk, ck) in enumerate(zip(alg.ys, alg.cs)):
        da = a.partial(ck)
        if not da:
            continue
        for i, (yi, ci) in enumerate(zip(alg.ys, alg.cs)):
            for j, (yj, cj) in enumerate(zip(alg.ys, alg.cs)):
                if i == j:
                    continue
                coeff = bivector_coefficient(setup.Pi, yi, yj).partial(yk).set_to_zero(alg.ys)
                if coeff:
                    out = out - (coeff * alg(ci) * alg(cj) * da).scale(Fraction(1, 2))
    return out


def transfer_input(setup: BFVSetup) -> TransferInput:
    """(D_BFV - delta, shifted bracket) with D_BFV = [Omega, -]_BFV."""
    omega = setup.charge.total

    def mu1(X):
        return setup.bracket(omega, X) - delta(setup, X)

    # the mutation harness flips the decalage sign
    broken = bool(setup.debug.get("break_sign"))

    def mu2(a, b):
        out = a.zero()
        for d, part in a.homogeneous_parts().items():
            t = setup.bracket(part, b)
            out = out + (t if bool(d % 2) != broken else -t)
        return out

    return TransferInput(mu2=mu2, degree=lambda X: X.degree() - 1, mu1=mu1)


# Maurer-Cartan elements -------------------------------------------------------------

def section_term(setup: BFVSetup, mu: Sequence[SuperPoly]) -> SuperPoly:
    """sum_j mu_j c_j."""
    alg = setup.alg
    out = alg.zero()
    for m, c in zip(mu, alg.cs):
        out = out + m * alg(c)
    return out


def read_section(setup: BFVSetup, mu) -> list:
    alg = setup.alg
    if mu is None:
        return [alg.zero()] * setup.e
    mu = [_as_poly(alg, m) for m in mu]
    if len(mu) != setup.e:
        raise ValueError(f"section needs {setup.e} components, got {len(mu)}")
    xk = {alg.index[n] for n in alg.xs}
    for m in mu:
        if not m.used() <= xk:
            raise ValueError(f"section component {m} must be a polynomial in x")
    return mu


@dataclass
class MCResult:
    coisotropic: bool
    mu: list
    obstruction: SuperPoly
    levels: list = field(default_factory=list)
    beta: SuperPoly | None = None

    @property
    def total(self):
        out = self.obstruction.zero()
        for L in self.levels:
            out = out + L
        return out


def section_obstruction(setup: BFVSetup, mu) -> SuperPoly:
    """[psi0, psi0] for psi0 = Omega_0 + sum mu_j c_j and the lifted Pi, on the graph y = -mu."""
    mu = read_section(setup, mu)
    psi0 = setup.omega0 + section_term(setup, mu)
    return i_mu_star(setup, bracket_with(setup.lifted_Pi, psi0, psi0), mu)


def extend_section_to_mc(setup: BFVSetup, mu, exact_shifts: Mapping[int, SuperPoly] | None = None
                         ) -> MCResult:
    """Extend Omega_0 + mu to a Maurer-Cartan element, or report the obstruction.

    ``exact_shifts[k]`` is an element eta of bidegree (k+1, k+1); delta_mu(eta)
    is added to level k, which yields a different extension of the same section.
    """
    mu = read_section(setup, mu)
    obstruction = section_obstruction(setup, mu)
    if obstruction:
        return MCResult(False, mu, obstruction)
    psi0 = setup.omega0 + section_term(setup, mu)
    levels = _close(setup, psi0, mu, exact_shifts)
    while len(levels) > 1 and not levels[-1]:
        levels.pop()
    out = MCResult(True, mu, obstruction, levels)
    total = out.total
    if setup.bracket(total, total):
        raise InternalError("extension is not Maurer-Cartan")
    out.beta = total - setup.charge.total
    return out


def mc_residual_bfv(setup: BFVSetup, omega: SuperPoly, beta: SuperPoly) -> SuperPoly:
    psi = omega + beta
    return setup.bracket(psi, psi)


def truncation_T(X: SuperPoly) -> SuperPoly:
    """The bigrade (1, 0) part."""
    alg = X.table
    return X.filter(lambda m: alg.bidegree(m) == (1, 0))


def is_normalized(X: SuperPoly) -> bool:
    """Whether the truncation of X (a deviation from the charge) is y-free.

    Then T(X) is pulled back from a section of the bundle.
    """
    alg = X.table
    return not truncation_T(X).used() & {alg.index[y] for y in alg.ys}


def section_of(setup: BFVSetup, X: SuperPoly) -> list:
    """mu with T(X) = Omega_0 + sum mu_j c_j; requires a normalized X."""
    alg = setup.alg
    T = truncation_T(X) - setup.omega0
    if T.used() & {alg.index[y] for y in alg.ys}:
        raise PreconditionError("truncation is not a pulled-back section")
    return [T.partial(c) for c in alg.cs]


# gauge action -----------------------------------------------------------------------

def exp_ad(setup: BFVSetup, xi: SuperPoly, X: SuperPoly, sign: int = 1, limit: int = 64) -> SuperPoly:
    """exp(sign * [xi, -]_BFV) X for a nilpotent ad_xi."""
    total, term = X, X
    for n in range(1, limit + 1):
        term = setup.bracket(xi, term).scale(Fraction(sign, n))
        if not term:
            return total
        total = total + term
    raise InternalError("gauge exponential did not terminate")


def apply_gauge(setup: BFVSetup, generators: Sequence[SuperPoly], X: SuperPoly,
                inverse: bool = False) -> SuperPoly:
    """Apply exp(-ad eps_k) in order, or the inverse composite."""
    if inverse:
        for eps in reversed(generators):
            X = exp_ad(setup, eps, X, +1)
    else:
        for eps in generators:
            X = exp_ad(setup, eps, X, -1)
    return X


def gauge_between(setup: BFVSetup, omega: SuperPoly, alpha: SuperPoly, beta: SuperPoly) -> list:
    """Generators eps_k with exp(-ad eps_last) ... exp(-ad eps_1)(omega + alpha) = omega + beta."""
    src, dst = omega + alpha, omega + beta
    for X in (src, dst):
        if setup.bracket(X, X):
            raise PreconditionError("input is not Maurer-Cartan")
    if truncation_T(src) != truncation_T(dst):
        raise PreconditionError("truncations differ")
    mu = section_of(setup, src)
    gens = []
    current = src
    for k in range(1, setup.e + 1):
        diff = dst - current
        comps = by_b_count(diff)
        if any(j < k for j in comps):
            raise InternalError(f"difference below level {k} survived")
        d = comps.get(k)
        if d is None:
            continue
        if delta(setup, d, mu):
            raise InternalError(f"level {k} difference is not closed")
        eps = h_mu(setup, d, mu)
        if delta(setup, eps, mu) != d:
            raise InternalError(f"level {k} difference is not exact")
        gens.append(eps)
        current = exp_ad(setup, eps, current, -1)
    if current != dst:
        raise InternalError("gauge composite does not reach the target")
    return gens


# formal Maurer-Cartan elements -------------------------------------------------------

class EpsSeries(list):
    """Coefficients of eps^0 .. eps^N; all operations truncate at the length."""

    @property
    def order(self):
        return len(self) - 1


def series_bracket(setup: BFVSetup, A: Sequence, B: Sequence, N: int) -> EpsSeries:
    out = EpsSeries(setup.alg.zero() for _ in range(N + 1))
    for i, a in enumerate(A[:N + 1]):
        if not a:
            continue
        for j, b in enumerate(B[:N + 1 - i]):
            if b:
                out[i + j] = out[i + j] + setup.bracket(a, b)
    return out


def series_exp_ad(setup: BFVSetup, xi: Sequence, X: Sequence, N: int) -> EpsSeries:
    """exp([xi, -]) X truncated at eps^N; xi has no eps^0 term."""
    if xi and xi[0]:
        raise ValueError("the generator must be divisible by eps")
    total = EpsSeries(list(X[:N + 1]) + [setup.alg.zero()] * (N + 1 - len(X)))
    term = total
    for n in range(1, N + 1):
        term = EpsSeries(t.scale(Fraction(1, n)) for t in series_bracket(setup, xi, term, N))
        if not any(term):
            break
        total = EpsSeries(a + b for a, b in zip(total, term))
    return total


def formal_residual(setup: BFVSetup, omega: SuperPoly, beta: Sequence, N: int) -> EpsSeries:
    psi = EpsSeries([omega + beta[0]] + list(beta[1:N + 1]))
    return series_bracket(setup, psi, psi, N)


def random_bfv_element(setup: BFVSetup, rng: random.Random, degree: int, max_y: int = 2,
                       terms: int = 3) -> SuperPoly:
    """Sum of random monomials of the given total degree with small integer coefficients."""
    alg = setup.alg
    out = alg.zero()
    for _ in range(terms):
        n_b = rng.randint(0, setup.e)
        n_c = n_b + degree
        if not 0 <= n_c <= setup.e:
            continue
        mono = alg.const(rng.choice([-2, -1, 1, 2, 3]))
        for c in rng.sample(alg.cs, n_c):
            mono = mono * alg(c)
        for b in rng.sample(alg.bs, n_b):
            mono = mono * alg(b)
        for _ in range(rng.randint(0, max_y)):
            mono = mono * alg(rng.choice(alg.ys))
        for _ in range(rng.randint(0, 1)):
            mono = mono * alg(rng.choice(alg.xs)) if alg.xs else mono
        out = out + mono
    return out


def random_formal_mc(setup: BFVSetup, rng: random.Random, N: int) -> EpsSeries:
    """beta = exp(ad xi)(Omega) - Omega for a random degree-0 xi in eps BFV[[eps]]."""
    omega = setup.charge.total
    xi = EpsSeries([setup.alg.zero()] + [random_bfv_element(setup, rng, 0) for _ in range(N)])
    moved = series_exp_ad(setup, xi, [omega], N)
    moved[0] = moved[0] - omega
    return moved


def normalize_formal_mc(setup: BFVSetup, omega: SuperPoly, beta: Sequence, N: int):
    """Gauge a formal MC element (no eps^0 term) to one whose truncation is y-free.

    Returns (gamma list indexed by eps order, normalized series).
    """
    beta = EpsSeries(list(beta[:N + 1]) + [setup.alg.zero()] * (N + 1 - len(beta)))
    if beta[0]:
        raise PreconditionError("formal element must be divisible by eps")
    if any(formal_residual(setup, omega, beta, N)):
        raise PreconditionError(f"not Maurer-Cartan modulo eps^{N + 1}")
    gammas = []
    psi = EpsSeries([omega] + list(beta[1:]))
    for l in range(1, N + 1):
        b0 = truncation_T(psi[l])
        gamma = homotopy_h(setup, b0)
        gammas.append(gamma)
        if not gamma:
            continue
        xi = EpsSeries([setup.alg.zero()] * (N + 1))
        xi[l] = gamma
        psi = series_exp_ad(setup, xi, psi, N)
        if not is_normalized(psi[l]):
            raise InternalError(f"order {l} is not normalized after the gauge step")
    out = EpsSeries([psi[0] - omega] + list(psi[1:]))
    if out[0]:
        raise InternalError("gauge moved the eps^0 term")
    if any(formal_residual(setup, omega, out, N)):
        raise InternalError("normalized element is not Maurer-Cartan")
    return gammas, out


# coisotrope generators ----------------------------------------------------------------

@dataclass
class Certificate:
    pair: tuple[int, int]
    coefficients: list | None

    @property
    def found(self):
        return self.coefficients is not None


def _monomials(alg, names, D):
    out = [alg.const(1)]
    frontier = [alg.const(1)]
    for _ in range(D):
        nxt = []
        seen = {tuple(sorted(m.terms)) for m in out}
        for m in frontier:
            for n in names:
                q = m * alg(n)
                key = tuple(sorted(q.terms))
                if key not in seen:
                    seen.add(key)
                    nxt.append(q)
        out.extend(nxt)
        frontier = nxt
    return out


def coisotrope_generators(setup: BFVSetup, omega: SuperPoly, beta: SuperPoly, D: int):
    """Generators h^j (c_j-coefficients of the truncation) and bracket certificates.

    For each i < j, looks for polynomials a_k of degree <= D with
    [h^i, h^j]_Pi = sum_k a_k h^k.
    """
    alg = setup.alg
    if not is_normalized(beta):
        raise PreconditionError("element is not normalized")
    T = truncation_T(omega + beta)
    gens = [T.partial(c) for c in alg.cs]
    monos = _monomials(alg, alg.xs + alg.ys, D)
    certs = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            target = setup.poisson(gens[i], gens[j])
            columns = [(k, m, m * gens[k]) for k in range(len(gens)) for m in monos]
            sol = linalg.solve_columns([col.terms for _, _, col in columns], target.terms)
            if sol is None:
                certs.append(Certificate((i, j), None))
                continue
            coeffs = [alg.zero() for _ in gens]
            for (k, m, _), v in zip(columns, sol):
                if v:
                    coeffs[k] = coeffs[k] + m.scale(v)
            check = alg.zero()
            for a, g in zip(coeffs, gens):
                check = check + a * g
            if check != target:
                raise InternalError("certificate does not reproduce the bracket")
            certs.append(Certificate((i, j), coeffs))
    return gens, certs
