import itertools
import random
from fractions import Fraction

import pytest

from bfvlab import bfv, corpus, suite
from bfvlab.oddsymplectic import NotPoissonError
from bfvlab.superpoly import parse, serialize


def P(setup, text):
    return parse(text, setup.alg)


@pytest.fixture
def fl():
    return corpus.get("fiberlinear")


@pytest.fixture
def torus():
    return corpus.get("torus")


def test_delta_and_homotopy_examples(fl):
    a = fl.alg
    assert bfv.delta(fl, a("b1")) == a("y1")
    assert bfv.delta(fl, P(fl, "x1*y2*c1 + c1*c2")) == a.zero()
    assert bfv.homotopy_h(fl, a("y1")) == a("b1")
    assert bfv.homotopy_h(fl, a("y1", 2)) == a("b1") * a("y1")
    assert bfv.homotopy_h(fl, a("x1") * a("c2")) == a.zero()


def test_bfv_contraction_identities(setup):
    assert suite.check_bfv_contraction(setup, 200, 0).ok


def test_shifted_homotopy(torus):
    rng = random.Random(4)
    mu = [P(torus, "x3^2 - x1"), P(torus, "2*x4")]
    for _ in range(60):
        X = suite.random_bfv_monomial(rng, torus)
        dh = bfv.delta(torus, bfv.h_mu(torus, X, mu), mu)
        hd = bfv.h_mu(torus, bfv.delta(torus, X, mu), mu)
        assert dh + hd == X - bfv.i_mu_star(torus, X, mu)
        assert not bfv.delta(torus, bfv.delta(torus, X, mu), mu)


def test_p_star_domain(fl):
    with pytest.raises(ValueError):
        bfv.p_star(fl, fl.alg("y1"))


def test_make_setup_examples():
    assert bfv.make_setup(2, 2, {("y1", "y2"): "y1"}).charge
    with pytest.raises(bfv.NotCoisotropicError) as info:
        bfv.make_setup(2, 2, {("y1", "y2"): 1})
    assert list(info.value.offending) == [("y1", "y2")]
    with pytest.raises(NotPoissonError):
        bfv.make_setup(3, 0, {("x1", "x2"): "x3", ("x2", "x3"): "x3", ("x1", "x3"): "x2"})
    with pytest.raises(bfv.SetupError):
        bfv.make_setup(1, 1, {("x1", "z1"): 1})
    with pytest.raises(bfv.SetupError):
        bfv.make_setup(1, 1, {("x1", "x1"): 1})
    with pytest.raises(bfv.SetupError):
        bfv.make_setup(1, 1, {("x1", "y1"): "c1"})
    with pytest.raises(bfv.SetupError):
        bfv.make_setup(1, 1, {("x1", "y1"): 1}, {(2, 1, 1): 1})


def test_flat_bracket_splits(torus):
    a = torus.alg
    rng = random.Random(2)
    G, Pi = a.pairing(), torus.Pi
    for _ in range(20):
        F = suite.random_bfv_monomial(rng, torus, 2)
        K = suite.random_bfv_monomial(rng, torus, 2)
        assert torus.bracket(F, K) == bfv.bracket_with(G, F, K) + bfv.bracket_with(Pi, F, K)


@pytest.mark.parametrize("name", ["torus", "fiberlinear", "mixed", "sheared"])
def test_flat_bracket_properties(name):
    setup = corpus.get(name)
    a = setup.alg
    for j, c in enumerate(a.cs):
        for k, b in enumerate(a.bs):
            assert setup.bracket(a(c), a(b)) == a.const(int(j == k))
    for u, v in itertools.product(a.xs + a.ys, repeat=2):
        assert setup.bracket(a(u), a(v)) == setup.poisson(a(u), a(v))


def test_curved_bracket_properties_modulo_b():
    setup = corpus.get("quadratic")
    a = setup.alg
    raw = setup.bracket(a("c1"), a("b1"))
    assert raw != a.const(1)
    assert bfv.b_component(raw, 0) == a.const(1)


def test_bracket_memo_is_consistent(setup):
    rng = random.Random(6)
    for _ in range(10):
        F = suite.random_bfv_monomial(rng, setup, 2) + suite.random_bfv_monomial(rng, setup, 2)
        K = suite.random_bfv_monomial(rng, setup, 2)
        assert setup.bracket(F, K) == bfv.bracket_with(setup.Pihat, F, K)


def test_charge_examples(torus, fl):
    assert [serialize(L) for L in torus.charge.levels] == ["y1*c1 + y2*c2"]
    assert [serialize(L) for L in fl.charge.levels] == ["y1*c1 + y2*c2", "-c1*c2*b1"]


def test_charge_level_one_is_minus_h_of_half_square(fl):
    R0 = fl.bracket(fl.omega0, fl.omega0).scale(Fraction(1, 2))
    assert fl.charge.levels[1] == -bfv.homotopy_h(fl, R0)


def test_charge_invariants(setup):
    assert suite.check_charge(setup).ok
    if not bfv.coisotropy_defects(setup.alg, setup.Pi) and all(
            not bfv.bivector_coefficient(setup.Pi, u, v)
            for u, v in itertools.combinations(setup.alg.ys, 2)) and not setup.gamma:
        assert len(setup.charge.levels) <= 2


def test_delta1_examples(fl):
    a = fl.alg
    assert bfv.delta1(fl, a("c1")) == -a("c1") * a("c2")
    assert bfv.delta1(fl, a("c2")) == a.zero()
    torus = corpus.get("torus")
    t = torus.alg
    f = P(torus, "x1^2*x3 + x2")
    # Pi^{y_i x_i} = -1 on the torus
    expect = -t("c1") * f.partial("x1") - t("c2") * f.partial("x2")
    assert bfv.delta1(torus, f) == expect


def test_delta1_squares_to_zero(setup):
    rng = random.Random(1)
    a = setup.alg
    for _ in range(20):
        x = suite.random_monomial(rng, a, a.xs + a.cs, 4)
        assert not bfv.delta1(setup, bfv.delta1(setup, x))


def test_delta1_is_induced_differential(setup):
    assert suite.check_delta1(setup).ok


@pytest.mark.parametrize("name", ["sheared", "torus", "fiberlinear", "mixed", "rank1"])
def test_transferred_brackets_match_derived(name):
    assert suite.check_transfer(corpus.get(name), 3).ok


def test_broken_sign_is_caught():
    base = corpus.SPECS["torus"]
    setup = bfv.make_setup(name="broken", debug={"break_sign": True}, **base)
    check = suite.check_transfer(setup, 3)
    assert not check.ok and "nu^2" in check.detail


def test_section_examples(torus):
    zero = bfv.extend_section_to_mc(torus, None)
    assert zero.coisotropic and not zero.beta
    same = bfv.extend_section_to_mc(torus, ["x3", "x3"])
    assert same.coisotropic
    assert not bfv.mc_residual_bfv(torus, torus.charge.total, same.beta)
    assert bfv.is_normalized(same.beta)
    assert bfv.section_of(torus, torus.charge.total + same.beta) == [P(torus, "x3")] * 2
    bad = bfv.extend_section_to_mc(torus, ["x3", "x4"])
    assert not bad.coisotropic
    assert bad.obstruction == -2 * torus.alg("c1") * torus.alg("c2")


def test_section_input_errors(torus):
    with pytest.raises(ValueError):
        bfv.extend_section_to_mc(torus, ["x1"])
    with pytest.raises(ValueError):
        bfv.extend_section_to_mc(torus, ["y1", "0"])


def test_mc_residual_examples(fl):
    omega = fl.charge.total
    assert not bfv.mc_residual_bfv(fl, omega, fl.alg.zero())
    assert not bfv.mc_residual_bfv(fl, omega, -omega)
    assert bfv.mc_residual_bfv(fl, omega, P(fl, "x1*c1"))


def test_truncation_examples(fl):
    a = fl.alg
    b = P(fl, "x1^2*c1")
    assert bfv.truncation_T(b) == b and bfv.is_normalized(b)
    b = P(fl, "y1*c1")
    assert bfv.truncation_T(b) == b and not bfv.is_normalized(b)
    b = P(fl, "y1*c1*c2*b1")
    assert bfv.truncation_T(b) == a.zero() and bfv.is_normalized(b)


def second_extension(setup, mu, coeff):
    a = setup.alg
    eta = coeff * a("c1") * a("c2") * a("b1") * a("b2")
    return bfv.extend_section_to_mc(setup, mu, {1: eta})


@pytest.mark.parametrize("name,mu", [("fiberlinear", ["0", "x1^2"]), ("quadratic", ["0", "0"]),
                                     ("torus", ["x3 + x2", "x3 + x1"])])
def test_gauge_between_extensions(name, mu):
    setup = corpus.get(name)
    omega = setup.charge.total
    first = bfv.extend_section_to_mc(setup, mu)
    second = second_extension(setup, mu, P(setup, "x1 + 2"))
    assert first.coisotropic and second.coisotropic
    assert first.beta != second.beta
    assert not bfv.mc_residual_bfv(setup, omega, second.beta)
    gens = bfv.gauge_between(setup, omega, first.beta, second.beta)
    assert len(gens) == 1
    assert all(setup.alg.bidegree(m) == (2, 2) for m in gens[0].terms)
    assert bfv.apply_gauge(setup, gens, omega + first.beta) == omega + second.beta
    assert bfv.apply_gauge(setup, gens, omega + second.beta, inverse=True) == omega + first.beta
    back = bfv.gauge_between(setup, omega, second.beta, first.beta)
    assert bfv.apply_gauge(setup, back, omega + second.beta) == omega + first.beta


def test_gauge_between_trivial_and_errors(fl):
    omega = fl.charge.total
    r = bfv.extend_section_to_mc(fl, ["0", "x2"])
    assert bfv.gauge_between(fl, omega, r.beta, r.beta) == []
    other = bfv.extend_section_to_mc(fl, ["0", "x1"])
    with pytest.raises(bfv.PreconditionError):
        bfv.gauge_between(fl, omega, r.beta, other.beta)
    with pytest.raises(bfv.PreconditionError):
        bfv.gauge_between(fl, omega, r.beta, P(fl, "x1*c1"))


def test_formal_normalization_examples(torus):
    omega = torus.charge.total
    a = torus.alg
    beta = bfv.EpsSeries([a.zero(), a("c1") * a("y1")])
    gammas, out = bfv.normalize_formal_mc(torus, omega, beta, 1)
    assert gammas == [-a("c1") * a("b1")]
    assert bfv.delta(torus, gammas[0]) == a("c1") * a("y1")
    assert not bfv.truncation_T(out[1])
    already = bfv.EpsSeries([a.zero(), a("c1") * a("x1")])
    gammas, out = bfv.normalize_formal_mc(torus, omega, already, 1)
    assert gammas == [a.zero()] and out == already
    gammas, out = bfv.normalize_formal_mc(torus, omega, bfv.EpsSeries([a.zero()]), 0)
    assert gammas == [] and list(out) == [a.zero()]


def test_formal_normalization_preconditions(torus):
    a = torus.alg
    omega = torus.charge.total
    with pytest.raises(bfv.PreconditionError):
        bfv.normalize_formal_mc(torus, omega, [a.zero(), a("c1") * a("y1") * a("x1") * a("x2")
                                               + a("x3") * a("c1") * a("y2")], 1)
    with pytest.raises(bfv.PreconditionError):
        bfv.normalize_formal_mc(torus, omega, [a("c1"), a.zero()], 1)


@pytest.mark.parametrize("name", ["torus", "fiberlinear", "sheared"])
def test_formal_normalization_random(name):
    setup = corpus.get(name)
    omega = setup.charge.total
    for seed in range(3):
        beta = bfv.random_formal_mc(setup, random.Random(seed), 3)
        assert not any(bfv.formal_residual(setup, omega, beta, 3))
        _, out = bfv.normalize_formal_mc(setup, omega, beta, 3)
        assert all(bfv.is_normalized(b) for b in out[1:])
        assert not any(bfv.formal_residual(setup, omega, out, 3))


def test_certificates(fl, torus):
    omega = fl.charge.total
    gens, certs = bfv.coisotrope_generators(fl, omega, fl.alg.zero(), 1)
    assert gens == [fl.alg("y1"), fl.alg("y2")]
    assert certs[0].found and certs[0].coefficients == [fl.alg.const(1), fl.alg.zero()]
    r = bfv.extend_section_to_mc(torus, ["x3", "x3"])
    gens, certs = bfv.coisotrope_generators(torus, torus.charge.total, r.beta, 1)
    assert gens == [P(torus, "y1 + x3"), P(torus, "y2 + x3")]
    assert certs[0].coefficients == [torus.alg.zero()] * 2
    with pytest.raises(bfv.PreconditionError):
        bfv.coisotrope_generators(fl, omega, P(fl, "y1*c1"), 1)


def test_certificate_found_for_symplectic_graph(torus):
    r = bfv.extend_section_to_mc(torus, ["x2*x3", "x1*x3"])
    assert r.coisotropic
    _, certs = bfv.coisotrope_generators(torus, torus.charge.total, r.beta, 2)
    assert all(c.found for c in certs)
