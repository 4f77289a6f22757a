"""Property checks of one setup, in a fixed order; used by ``bfvlab verify``."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import bfv, linfty, trees, voronov
from .oddsymplectic import LiftContraction, bidegrees, sn_bracket
from .superpoly import SuperPoly, serialize


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _zero(v, alg):
    return alg.zero() if v is None else v


def random_monomial(rng: random.Random, alg, names, max_factors: int = 4) -> SuperPoly:
    while True:
        m = alg.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, max_factors)):
            m = m * alg(rng.choice(names))
        if m:
            return m


def random_bfv_monomial(rng: random.Random, setup, max_y: int = 4) -> SuperPoly:
    """Monomial in x, y, c, b with mixed bigrade and y-degree at most max_y."""
    alg = setup.alg
    m = alg.const(rng.choice([-3, -2, -1, 1, 2, 3]))
    for c in alg.cs:
        if rng.random() < 0.5:
            m = m * alg(c)
    for b in alg.bs:
        if rng.random() < 0.5:
            m = m * alg(b)
    for _ in range(rng.randint(0, max_y)):
        m = m * alg(rng.choice(alg.ys))
    for _ in range(rng.randint(0, 2)):
        if alg.xs:
            m = m * alg(rng.choice(alg.xs))
    return m


def generators(setup):
    alg = setup.alg
    return [alg(n) for n in alg.xs + alg.cs]


def check_derived_jacobiator(setup, max_arity: int, trials: int, seed: int) -> Check:
    """J^n of the derived brackets of Pi equals D^n of [Pi, Pi]/2 (which is zero)."""
    V = voronov.vector_bundle_valgebra(setup.alg)
    S = voronov.derived_structure(V, setup.Pi, max_arity + 1)
    rep = linfty.is_linfty(S, max_arity, trials, seed)
    if rep:
        return Check("derived brackets of Pi form an L-infinity[1] algebra", True)
    return Check("derived brackets of Pi form an L-infinity[1] algebra", False,
                 f"arity {rep.arity}: J = {rep.value}")


def check_lift_contraction(setup, trials: int, seed: int) -> Check:
    rng = random.Random(seed)
    alg = setup.alg
    C = LiftContraction(alg, setup.gamma)
    contraction = trees.Contraction(d=C.Q, h=C.H, i=C.iota, p=C.pr)
    big = [random_monomial(rng, alg, alg.names) for _ in range(trials)]
    base = [n for n in alg.names if n not in alg.fiber]
    small = [random_monomial(rng, alg, base) for _ in range(trials)]
    bad = trees.check_contraction(contraction, big, small)
    return Check("lift contraction identities", not bad, ", ".join(bad))


def check_bfv_contraction(setup, trials: int, seed: int) -> Check:
    rng = random.Random(seed)
    alg = setup.alg
    big = [random_bfv_monomial(rng, setup) for _ in range(trials)]
    small = [random_monomial(rng, alg, alg.xs + alg.cs) for _ in range(trials)]
    bad = trees.check_contraction(bfv.bfv_contraction(setup), big, small)
    return Check("BFV contraction identities", not bad, ", ".join(bad))


def check_rothstein(setup) -> Check:
    name = "lifted bivector squares to zero"
    Ph = setup.Pihat
    sq = sn_bracket(Ph, Ph)
    if sq:
        return Check(name, False, f"[Pi_hat, Pi_hat] = {serialize(sq)}")
    bad = {bd for bd in bidegrees(setup.Delta) if bd[0] < 1 or bd[1] < 1}
    if bad:
        return Check(name, False, f"Delta has bidegrees {sorted(bad)}")
    if not setup.gamma and setup.Delta:
        return Check(name, False, "Delta is nonzero for the trivial connection")
    return Check(name, True)


def check_charge(setup) -> Check:
    name = "charge squares to zero"
    ch = setup.charge
    if ch.levels[0] != setup.omega0:
        return Check(name, False, "Omega_0 is not the tautological section")
    for k, L in enumerate(ch.levels):
        for bd in bfv.bigrade_parts(L):
            if bd != (k + 1, k):
                return Check(name, False, f"Omega_{k} has bigrade {bd}")
    sq = setup.bracket(ch.total, ch.total)
    return Check(name, not sq, "" if not sq else serialize(sq))


def check_delta1(setup) -> Check:
    C = bfv.bfv_contraction(setup)
    L = bfv.transfer_input(setup)
    induced, _ = trees.transfer_complex(C, L.mu1)
    for g in generators(setup):
        if _zero(induced(g), setup.alg) != bfv.delta1(setup, g):
            return Check("induced differential is the algebroid differential", False, f"on {g}")
    return Check("induced differential is the algebroid differential", True)


def check_transfer(setup, max_arity: int) -> Check:
    """nu^1 = delta1 and nu^k = mu^k on all generator multisets."""
    name = "transferred brackets equal derived brackets"
    alg = setup.alg
    C = bfv.bfv_contraction(setup)
    L = bfv.transfer_input(setup)
    for g in generators(setup):
        if _zero(trees.nu_k(C, L, 1, [g]), alg) != bfv.delta1(setup, g):
            return Check(name, False, f"nu^1({g})")
    for k in range(2, max_arity + 1):
        for tup in itertools.combinations_with_replacement(generators(setup), k):
            nu = _zero(trees.nu_k(C, L, k, list(tup)), alg)
            mu = voronov.shla_brackets(setup, k, list(tup))
            if nu != mu:
                args = ", ".join(map(str, tup))
                return Check(name, False, f"nu^{k}({args}) = {nu} but mu^{k} = {mu}")
    return Check(name, True)


def transfer_structures(setup, max_arity: int = 3):
    """(nu structure, BFV structure, lambda morphism) as linfty objects."""
    C = bfv.bfv_contraction(setup)
    L = bfv.transfer_input(setup)
    omega = setup.charge.total
    deg = L.degree

    def nu(k):
        return lambda xs: trees.nu_k(C, L, k, xs)

    def lam(k):
        return lambda xs: trees.lambda_k(C, L, k, xs)

    src = linfty.LInftyStructure({k: nu(k) for k in range(1, max_arity + 1)}, deg)
    dst = linfty.LInftyStructure({1: lambda xs: setup.bracket(omega, xs[0]),
                                  2: lambda xs: L.mu2(xs[0], xs[1])}, deg)
    F = linfty.LInftyMorphism({k: lam(k) for k in range(1, max_arity + 1)})
    return src, dst, F


def check_morphism(setup, max_arity: int, trials: int, seed: int) -> Check:
    name = "transfer morphism is an L-infinity morphism"
    rng = random.Random(seed)
    alg = setup.alg
    src, dst, F = transfer_structures(setup, max_arity)
    for _ in range(trials):
        for k in range(1, max_arity + 1):
            args = [voronov.random_homogeneous(rng, alg, alg.xs + alg.cs, 2) for _ in range(k)]
            d = linfty.morphism_defect(F, src, dst, k, args)
            if d is not None and d:
                return Check(name, False, f"arity {k} on {', '.join(map(str, args))}")
    return Check(name, True)


def check_sections(setup, trials: int, seed: int) -> Check:
    """Random sections: either a nonzero obstruction or a normalized MC extension."""
    name = "sections extend or are obstructed"
    rng = random.Random(seed)
    alg = setup.alg
    omega = setup.charge.total
    for _ in range(trials):
        mu = [random_monomial(rng, alg, alg.xs, 2) if rng.random() < 0.7 else alg.zero()
              for _ in range(setup.e)]
        r = bfv.extend_section_to_mc(setup, mu)
        if r.coisotropic:
            if bfv.mc_residual_bfv(setup, omega, r.beta) or not bfv.is_normalized(r.beta):
                return Check(name, False, f"bad extension of {[str(m) for m in mu]}")
    return Check(name, True)


def check_formal(setup, order: int, trials: int, seed: int) -> Check:
    name = "formal Maurer-Cartan elements normalize"
    omega = setup.charge.total
    for t in range(trials):
        rng = random.Random(seed * 1000 + t)
        beta = bfv.random_formal_mc(setup, rng, order)
        _, out = bfv.normalize_formal_mc(setup, omega, beta, order)
        if not all(bfv.is_normalized(b) for b in out[1:]):
            return Check(name, False, f"trial {t}")
    return Check(name, True)


def run(setup, seed: int = 0, trials: int = 20, max_arity: int = 3, order: int = 2):
    """All checks; trials = 0 keeps only the deterministic structural ones."""
    yield check_rothstein(setup)
    yield check_charge(setup)
    yield check_delta1(setup)
    yield check_transfer(setup, max_arity)
    if trials:
        yield check_derived_jacobiator(setup, max_arity, trials, seed)
        yield check_lift_contraction(setup, 10 * trials, seed)
        yield check_bfv_contraction(setup, 10 * trials, seed)
        yield check_morphism(setup, max_arity, max(1, trials // 4), seed)
        yield check_sections(setup, trials, seed)
        yield check_formal(setup, order, max(1, trials // 10), seed)
