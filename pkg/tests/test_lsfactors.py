from fractions import Fraction

import pytest

from localfactors.characters import AddChar, MultChar, enumerate_mult_chars, make_mult_char
from localfactors.errors import UsageError
from localfactors.localfield import FieldElt, make_field
from localfactors.lsfactors import (
    LanglandsQuotientParam, PrincipalSeriesParam, TwistedFactorRequest,
    plancherel, plancherel_decomposition, psi_dependence, rs_gamma, spherical_L,
    stability_check, stability_threshold, tempered_L, twisted_eps_and_L,
    twisted_gamma,
)
from localfactors.ratfunc import FactoredRF
from localfactors.scalar import Scalar
from localfactors.tate import tate_gamma


def field(p=3, m=4):
    return make_field(p, 1, m)


def req(chars, r0, eta=None, psi=None, field_=None):
    f = field_ or chars[0].field
    return TwistedFactorRequest(
        PrincipalSeriesParam(chars), r0,
        eta if eta is not None else MultChar.trivial(f),
        psi if psi is not None else AddChar.canonical(f),
    )


def some_chars(f):
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    unram = MultChar.unramified(f, Scalar.zeta(4))
    wild = make_mult_char(f, 2, Scalar.one(), wild_images={(1, 0): (3, 1)})
    return quad, unram, wild


def test_wedge2_degree_one_is_trivial():
    f = field()
    quad, _, _ = some_chars(f)
    assert twisted_gamma(req([quad], "wedge2")) == FactoredRF.one()


def test_sym2_degree_one_is_tate_of_square():
    f = field()
    quad, unram, _ = some_chars(f)
    psi = AddChar.canonical(f)
    for chi in (quad, unram):
        for eta in (MultChar.trivial(f), quad):
            got = twisted_gamma(req([chi], "sym2", eta=eta))
            assert got == tate_gamma(chi * chi * eta, psi)


def test_wedge2_degree_two():
    f = field()
    quad, unram, _ = some_chars(f)
    psi = AddChar.canonical(f)
    eta = quad
    got = twisted_gamma(req([quad, unram], "wedge2", eta=eta))
    assert got == tate_gamma(quad * unram * eta, psi)


def test_sym2_degree_two_three_factors():
    f = field()
    quad, unram, _ = some_chars(f)
    psi = AddChar.canonical(f)
    eta = MultChar.trivial(f)
    got = twisted_gamma(req([quad, unram], "sym2"))
    expected = (
        tate_gamma(quad * quad, psi)
        * tate_gamma(unram * unram, psi)
        * tate_gamma(quad * unram, psi)
    )
    assert got == expected


def test_rs_gamma_symmetry_and_gl1():
    f = field()
    quad, unram, wild = some_chars(f)
    psi = AddChar.canonical(f)
    p1 = PrincipalSeriesParam([quad, wild])
    p2 = PrincipalSeriesParam([unram])
    assert rs_gamma(p1, p2, psi) == rs_gamma(p2, p1, psi)
    assert rs_gamma(p2, p2, psi) == tate_gamma(unram * unram, psi)
    # against the trivial GL1: product of single gammas
    triv = PrincipalSeriesParam([MultChar.trivial(f)])
    assert rs_gamma(p1, triv, psi) == tate_gamma(quad, psi) * tate_gamma(wild, psi)


def test_spherical_L_shapes():
    f = field()
    a, b = Scalar.zeta(4), Scalar.zeta(3)
    p = PrincipalSeriesParam([MultChar.unramified(f, a), MultChar.unramified(f, b)])
    eta = MultChar.unramified(f, Scalar.one())
    assert spherical_L(p, "wedge2", eta) == FactoredRF.euler(a * b)
    sym = spherical_L(p, "sym2", eta)
    assert sym == (
        FactoredRF.euler(a * a) * FactoredRF.euler(a * b) * FactoredRF.euler(b * b)
    )
    single = PrincipalSeriesParam([MultChar.unramified(f, a)])
    assert spherical_L(single, "wedge2", eta) == FactoredRF.one()
    with pytest.raises(UsageError):
        spherical_L(PrincipalSeriesParam([some_chars(f)[0]]), "sym2", eta)


def test_tempered_L_matches_spherical_for_unramified():
    f = field()
    a, b = Scalar.zeta(4), Scalar.zeta(3)
    p = PrincipalSeriesParam([MultChar.unramified(f, a), MultChar.unramified(f, b)])
    eta = MultChar.unramified(f, Scalar.zeta(8, 3))
    for r0 in ("sym2", "wedge2"):
        r = req(p.chars, r0, eta=eta)
        assert tempered_L(r) == spherical_L(p, r0, eta)


def test_tempered_L_ramified_is_one_and_degree_one():
    f = field()
    quad, unram, _ = some_chars(f)
    # chi^2 eta ramified for all pairs -> L = 1
    wildpair = req([quad], "sym2", eta=some_chars(f)[2])
    assert tempered_L(wildpair) == FactoredRF.one()
    # n = 1 sym2 with chi^2 eta unramified of value alpha -> 1/(1 - alpha Z)
    r = req([unram], "sym2")
    alpha = (unram * unram).pi_value
    assert tempered_L(r) == FactoredRF.euler(alpha)


def test_eps_unramified_is_one_and_monomial():
    f = field()
    _, unram, _ = some_chars(f)
    r = req([unram, MultChar.trivial(f)], "sym2")
    eps, L = twisted_eps_and_L(r)
    assert eps == FactoredRF.one()
    quad = some_chars(f)[0]
    r = req([quad, unram], "wedge2")  # pair character quad*unram is ramified
    eps, L = twisted_eps_and_L(r)
    assert eps.is_monomial()
    assert L == FactoredRF.one()
    assert eps == twisted_gamma(r)  # fully ramified: eps = gamma


def test_functional_equation_grid():
    for p in (2, 3):
        f = field(p, 3)
        psi = AddChar.canonical(f)
        chars = enumerate_mult_chars(f, 1, pi_values=[Scalar.one(), Scalar.zeta(3)])
        etas = enumerate_mult_chars(f, 1)[:2]
        for r0 in ("sym2", "wedge2"):
            for eta in etas:
                for c1 in chars:
                    for c2 in chars[:2]:
                        r = req([c1, c2], r0, eta=eta, psi=psi)
                        lhs = twisted_gamma(r)
                        rhs = twisted_gamma(r.dual()).reflect()
                        assert lhs * rhs == FactoredRF.one()


def test_unramified_twist_equivariance():
    f = field()
    quad, unram, _ = some_chars(f)
    s0 = Fraction(1, 2)
    for r0 in ("sym2", "wedge2"):
        base = req([quad, unram], r0)
        twisted = req([c.unramified_twist(s0 / 2) for c in (quad, unram)], r0)
        assert twisted_gamma(twisted) == twisted_gamma(base).shift(s0)


def test_langlands_quotient_shifts():
    f = field()
    quad, unram, _ = some_chars(f)
    psi = AddChar.canonical(f)
    eta = MultChar.trivial(f)
    p1 = PrincipalSeriesParam([quad])
    p2 = PrincipalSeriesParam([unram])
    lq = LanglandsQuotientParam([(p1, Fraction(1, 2)), (p2, Fraction(-1, 2))])
    r = TwistedFactorRequest(lq, "sym2", eta, psi)
    got = twisted_gamma(r)
    expected = (
        tate_gamma(quad * quad, psi).shift(1)
        * tate_gamma(unram * unram, psi).shift(-1)
        * tate_gamma(quad * unram, psi).shift(0)
    )
    assert got == expected
    # matches the flat principal series with the twists folded in
    flat = req([quad.unramified_twist(Fraction(1, 2)),
                unram.unramified_twist(Fraction(-1, 2))], "sym2")
    assert twisted_gamma(flat) == got


def test_multiplicativity_regrouping_n3():
    f = field()
    quad, unram, wild = some_chars(f)
    psi = AddChar.canonical(f)
    chars = [quad, unram, wild]
    for r0 in ("sym2", "wedge2"):
        for eta in (MultChar.trivial(f), quad):
            flat = twisted_gamma(req(chars, r0, eta=eta))
            for split in [(1, 1, 1), (2, 1), (1, 2), (3,)]:
                blocks, pos = [], 0
                for k in split:
                    blocks.append((PrincipalSeriesParam(chars[pos:pos + k]), 0))
                    pos += k
                lq = LanglandsQuotientParam(blocks)
                got = twisted_gamma(TwistedFactorRequest(lq, r0, eta, psi))
                assert got == flat


def test_psi_dependence_examples():
    f = field()
    quad, unram, _ = some_chars(f)
    pi = FieldElt.uniformizer(f)
    pi_inv = FieldElt.uniformizer(f, -1)
    u = FieldElt(f, 0, f.from_codes([2, 1, 1]))
    # n = 1 sym2, a = uniformizer: chi^2 eta (pi) q^(1/2) Z
    r = req([quad], "sym2")
    mult = psi_dependence(r, pi)
    chi2 = quad * quad
    assert mult == FactoredRF.monomial(chi2(pi) * Scalar.qpow(Fraction(1, 2)), 1)
    # n = 2 wedge2, a = uniformizer: omega eta (pi) q^(1/2) Z
    r = req([quad, unram], "wedge2")
    mult = psi_dependence(r, pi)
    omega = quad * unram
    assert mult == FactoredRF.monomial(omega(pi) * Scalar.qpow(Fraction(1, 2)), 1)
    # units with everything unramified: multiplier 1
    r = req([unram], "sym2")
    assert psi_dependence(r, FieldElt(f, 0, f.one)) == FactoredRF.one()
    # the assertion inside psi_dependence runs for all of these
    for r0 in ("sym2", "wedge2"):
        for a in (pi, pi_inv, u):
            psi_dependence(req([quad, unram], r0, eta=quad), a)


def stability_eta(f):
    # conductor 4 at q = 3: order-9 image on the (1,0) wild line
    return make_mult_char(f, 4, Scalar.one(), wild_images={(1, 0): (9, 1)})


def test_stability_n2():
    f = field(3, 6)
    psi = AddChar.canonical(f)
    eta = stability_eta(f)
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    omega = MultChar.unramified(f, Scalar.zeta(4))
    p1 = PrincipalSeriesParam([quad, quad.inverse() * omega])
    p2 = PrincipalSeriesParam([MultChar.trivial(f), omega])
    assert stability_threshold(p1, p2) == 4
    for r0 in ("sym2", "wedge2"):
        g1, g2, c, closed = stability_check(p1, p2, eta, psi, r0)
        assert g1 == g2 == closed
        assert c.v == psi.conductor - eta.conductor
    # identical parameters trivially pass
    stability_check(p1, p1, eta, psi, "wedge2")


def test_stability_usage_errors():
    f = field(3, 6)
    psi = AddChar.canonical(f)
    eta = stability_eta(f)
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    p1 = PrincipalSeriesParam([quad, quad])
    p2 = PrincipalSeriesParam([MultChar.trivial(f), quad])
    with pytest.raises(UsageError):
        stability_check(p1, p2, eta, psi, "sym2")  # central chars differ
    low = make_mult_char(f, 2, Scalar.one(), wild_images={(1, 0): (3, 1)})
    p2b = PrincipalSeriesParam([MultChar.trivial(f), quad * quad])
    with pytest.raises(UsageError):
        stability_check(p1, p2b, low, psi, "sym2")  # eta below threshold


def test_plancherel_basics():
    f = field()
    quad, unram, wild = some_chars(f)
    psi = AddChar.canonical(f)
    # n = 1 wedge2: both gammas trivial
    assert plancherel(req([quad], "wedge2")) == FactoredRF.one()
    # decomposition equals direct computation for all partitions at n = 3
    chars = [quad, unram, wild]
    for r0 in ("sym2", "wedge2"):
        r = req(chars, r0, eta=quad)
        mu = plancherel(r)
        for split in [(1, 1, 1), (2, 1), (1, 2), (3,)]:
            assert plancherel_decomposition(split, r) == mu


def test_plancherel_psi_scaling():
    f = field()
    quad, unram, _ = some_chars(f)
    pi = FieldElt.uniformizer(f)
    for r0, dim in (("sym2", 3), ("wedge2", 1)):
        r = req([quad, unram], r0, eta=quad)
        mu = plancherel(r)
        mu_scaled = plancherel(r.with_psi(r.psi.scaled(pi)))
        # mu'(psi^w) = |w|^(-dim) mu'(psi) = q^(dim) mu'(psi), no Z part
        assert mu_scaled == FactoredRF.from_scalar(Scalar.qpow(dim)) * mu


def test_tempered_pole_moduli():
    f = field()
    quad, unram, wild = some_chars(f)
    for r0 in ("sym2", "wedge2"):
        r = req([quad, unram], r0)
        L = tempered_L(r)
        _zeros, poles = L.zeros_poles()
        for pole in poles:
            t = pole.modulus_is_q_power()
            assert t is not None and t >= 0  # |pole| = q^t >= 1
