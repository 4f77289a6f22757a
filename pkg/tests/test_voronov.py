import itertools
import random
from fractions import Fraction

import pytest

from bfvlab import bfv, corpus, linfty, suite
from bfvlab.graded import koszul_sign
from bfvlab.oddsymplectic import PhaseAlgebra, sn_bracket
from bfvlab.voronov import (NotCoisotropic, derived_bracket, derived_structure, random_homogeneous,
                            shla_brackets, sn_valgebra, vector_bundle_valgebra)


def plane():
    alg = PhaseAlgebra(2, 0)
    return alg, sn_valgebra(alg, alg.xs, ("px1", "px2"))


def test_sign_table_on_the_plane():
    alg, V = plane()
    P = alg("px1") * alg("px2")
    assert sn_bracket(P, alg("x1")) == -alg("px2")
    assert derived_bracket(V, P, 2, [alg("x1"), alg("x2")]) == alg.const(-1)
    assert derived_bracket(V, P, 0, []) == alg.zero()
    assert derived_bracket(V, P, 3, [alg("x1"), alg("x2"), alg("x1")]) == alg.zero()


def test_derived_bracket_errors():
    alg, V = plane()
    with pytest.raises(ValueError):
        derived_bracket(V, alg("px1"), 1, [alg("x1")])
    with pytest.raises(ValueError):
        derived_bracket(V, alg("px1") * alg("px2"), 2, [alg("x1")])


def test_zeroth_bracket_is_projection():
    alg = PhaseAlgebra(1, 1)
    V = vector_bundle_valgebra(alg)
    P = alg("px1") * alg("py1") + alg("x1") * alg("pb1")
    assert derived_bracket(V, P, 0, []) == alg("x1") * alg("pb1")
    assert derived_bracket(V, P, 0, []) == V.projection(P)


def test_constant_bivector_has_no_third_bracket():
    alg = PhaseAlgebra(3, 0)
    V = sn_valgebra(alg, alg.xs, ("px1", "px2", "px3"))
    P = 2 * alg("px1") * alg("px2") - alg("px2") * alg("px3")
    rng = random.Random(4)
    for _ in range(10):
        args = [random_homogeneous(rng, alg, alg.xs) for _ in range(3)]
        assert not derived_bracket(V, P, 3, args)


@pytest.mark.parametrize("name", ["quadratic", "sheared", "fiberlinear"])
def test_graded_symmetry(name):
    setup = corpus.get(name)
    V = vector_bundle_valgebra(setup.alg)
    rng = random.Random(9)
    for n in (2, 3, 4):
        for _ in range(4):
            args = [V.sampler(rng) for _ in range(n)]
            degs = [V.degree(a) for a in args]
            base = derived_bracket(V, setup.Pi, n, args)
            for perm in itertools.permutations(range(n)):
                moved = derived_bracket(V, setup.Pi, n, [args[k] for k in perm])
                assert moved == koszul_sign(perm, degs) * base


def chain(V, Q, args):
    x = Q
    for a in args:
        x = V.bracket(x, a)
    return V.projection(x)


def random_bivector(rng, alg, names, coeff_names):
    P = alg.zero()
    for a, b in itertools.combinations(names, 2):
        if rng.random() < 0.7:
            P = P + suite.random_monomial(rng, alg, coeff_names, 2) * alg("p" + a) * alg("p" + b)
    return P


@pytest.mark.parametrize("seed", range(4))
def test_jacobiator_equals_derived_brackets_of_half_square(seed):
    rng = random.Random(seed)
    alg = PhaseAlgebra(2, 2)
    V = vector_bundle_valgebra(alg)
    coords = alg.xs + alg.ys
    P = random_bivector(rng, alg, coords, coords)
    half = sn_bracket(P, P).scale(Fraction(1, 2))
    S = derived_structure(V, P, 5)
    nonzero = False
    for n in range(0, 5):
        for _ in range(3 if n else 1):
            args = [V.sampler(rng) for _ in range(n)]
            J = linfty.jacobiator(S, n, args)
            want = chain(V, half, args)
            assert (J if J is not None else alg.zero()) == want
            nonzero = nonzero or bool(want)
    assert nonzero or not sn_bracket(P, P)


def test_poisson_bivector_gives_linfty():
    for setup in corpus.all_setups():
        V = vector_bundle_valgebra(setup.alg)
        assert linfty.is_linfty(derived_structure(V, setup.Pi, 4), 3, 5, 0)


def test_non_poisson_bivector_fails():
    alg = PhaseAlgebra(3, 0)
    V = sn_valgebra(alg, alg.xs, ("px1", "px2", "px3"))
    P = (alg("x3") * alg("px1") * alg("px2") + alg("x3") * alg("px2") * alg("px3")
         + alg("x2") * alg("px1") * alg("px3"))
    rep = linfty.is_linfty(derived_structure(V, P, 4), 3, 20, 0)
    assert not rep and rep.arity == 3


# oracles for the restricted structure maps, written with partial derivatives only

def coefficient(setup, a, b):
    return bfv.bivector_coefficient(setup.Pi, a, b)


def on_section(setup, X, ys=()):
    for y in ys:
        X = X.partial(y)
    return X.set_to_zero(setup.alg.ys)


def sign(k):
    return -1 if k % 2 else 1


def pure_fiber(setup, idx):
    """(-1)^k d^k/dy_I (sum_{i<j} Pi^{ij} c_i c_j) on the zero section."""
    alg = setup.alg
    block = alg.zero()
    for i, j in itertools.combinations(range(setup.e), 2):
        block = block + coefficient(setup, alg.ys[i], alg.ys[j]) * alg(alg.cs[i]) * alg(alg.cs[j])
    k = len(idx)
    return sign(k) * on_section(setup, block, [alg.ys[i] for i in idx])


def fiber_and_function(setup, idx, f):
    """(-1)^k d^k/dy_I (sum_{i, a} Pi^{i a} c_i df/dx_a) on the zero section."""
    alg = setup.alg
    block = alg.zero()
    for i in range(setup.e):
        for x in alg.xs:
            block = block + coefficient(setup, alg.ys[i], x) * alg(alg.cs[i]) * f.partial(x)
    k = len(idx)
    return sign(k) * on_section(setup, block, [alg.ys[i] for i in idx])


def fiber_and_two_functions(setup, idx, f, g):
    """(-1)^(k-1) d^k/dy_I (sum_{a<b} Pi^{ab} (d_a f d_b g - d_b f d_a g)) on the zero section."""
    alg = setup.alg
    block = alg.zero()
    for a, b in itertools.combinations(alg.xs, 2):
        P = coefficient(setup, a, b)
        block = block + P * (f.partial(a) * g.partial(b) - f.partial(b) * g.partial(a))
    k = len(idx)
    return sign(k - 1) * on_section(setup, block, [alg.ys[i] for i in idx])


@pytest.mark.parametrize("name", ["fiberlinear", "quadratic", "sheared", "torus", "rank1"])
def test_restricted_structure_maps(name):
    setup = corpus.get(name)
    alg = setup.alg
    rng = random.Random(1)
    for k in range(0, 4):
        for idx in itertools.combinations_with_replacement(range(setup.e), k):
            cs = [alg(alg.cs[i]) for i in idx]
            if k >= 1:
                assert shla_brackets(setup, k, cs) == pure_fiber(setup, idx)
            for _ in range(3):
                f = suite.random_monomial(rng, alg, alg.xs, 3)
                g = suite.random_monomial(rng, alg, alg.xs, 3)
                assert shla_brackets(setup, k + 1, cs + [f]) == fiber_and_function(setup, idx, f)
                assert shla_brackets(setup, k + 2, cs + [f, g]) == \
                    fiber_and_two_functions(setup, idx, f, g)


def test_first_bracket_is_algebroid_differential(setup):
    rng = random.Random(3)
    alg = setup.alg
    for _ in range(10):
        a = random_homogeneous(rng, alg, alg.xs + alg.cs, 3)
        assert shla_brackets(setup, 1, [a]) == bfv.delta1(setup, a)


def test_multiderivation(setup):
    alg = setup.alg
    rng = random.Random(8)
    names = alg.xs + alg.cs
    for k in (1, 2, 3):
        for _ in range(4):
            head = [random_homogeneous(rng, alg, names, 2) for _ in range(k - 1)]
            b = random_homogeneous(rng, alg, names, 2)
            c = random_homogeneous(rng, alg, names, 2)
            X = 2 + sum(a.degree() - 1 for a in head)
            sign = -1 if (X - 1) * b.degree() % 2 else 1
            lhs = shla_brackets(setup, k, head + [b * c])
            rhs = shla_brackets(setup, k, head + [b]) * c + sign * (b * shla_brackets(setup, k, head + [c]))
            assert lhs == rhs


def test_zero_bivector_is_abelian():
    setup = bfv.make_setup(2, 2, {})
    for k in range(1, 4):
        for tup in itertools.combinations_with_replacement(suite.generators(setup), k):
            assert not shla_brackets(setup, k, list(tup))


def test_shla_requires_coisotropic_setup():
    setup = bfv.make_setup(2, 2, {("y1", "y2"): 1}, check=False)
    with pytest.raises(NotCoisotropic) as info:
        shla_brackets(setup, 2, [setup.alg("c1"), setup.alg("c2")])
    assert info.value.residue


def test_shla_rejects_non_section_arguments():
    setup = corpus.get("fiberlinear")
    with pytest.raises(ValueError):
        shla_brackets(setup, 1, [setup.alg("y1")])
