import pytest

from localfactors.characters import AddChar, MultChar, associate, enumerate_mult_chars, make_mult_char
from localfactors.errors import UsageError
from localfactors.galois import (
    WeilParam, artin_factors, deligne_transfer, llc_match, r0_compose,
)
from localfactors.localfield import make_field
from localfactors.lsfactors import (
    PrincipalSeriesParam, TwistedFactorRequest, spherical_L,
)
from localfactors.ratfunc import FactoredRF
from localfactors.scalar import Scalar
from localfactors.tate import tate_L, tate_eps, tate_gamma


def field(p=3, m=4):
    return make_field(p, 1, m)


def test_plethysm_shapes():
    f = field()
    a = MultChar.unramified(f, Scalar.zeta(4))
    b = MultChar.unramified(f, Scalar.zeta(3))
    eta = MultChar.trivial(f)
    sigma = WeilParam([a, b])
    assert r0_compose(WeilParam([a]), "wedge2", eta).dim == 0
    sym = r0_compose(sigma, "sym2", eta)
    assert sym.dim == 3
    assert [c.pi_value for c in sym.chars] == [
        (a * a).pi_value, (a * b).pi_value, (b * b).pi_value,
    ]
    for n in range(1, 7):
        sig = WeilParam([a] * n)
        assert r0_compose(sig, "sym2", eta).dim == n * (n + 1) // 2
        assert r0_compose(sig, "wedge2", eta).dim == n * (n - 1) // 2


def test_plethysm_additivity():
    f = field()
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    a = MultChar.unramified(f, Scalar.zeta(4))
    eta = quad
    sigma, tau = WeilParam([a, quad]), WeilParam([quad * a])
    lhs = r0_compose(sigma + tau, "sym2", eta)
    cross = WeilParam([s * t * eta for s in sigma.chars for t in tau.chars])
    rhs = r0_compose(sigma, "sym2", eta) + r0_compose(tau, "sym2", eta) + cross
    assert sorted(c.key() for c in lhs.chars) == sorted(c.key() for c in rhs.chars)


def test_det_of_plethysm():
    # det(r0(sigma) tensor eta) = (det sigma)^(n +- 1) * eta^(n(n +- 1)/2)
    f = field()
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    a = MultChar.unramified(f, Scalar.zeta(4))
    wild = make_mult_char(f, 2, Scalar.one(), wild_images={(1, 0): (3, 1)})
    eta = quad
    for chars, r0, pm in [([a, quad], "sym2", 1), ([a, quad], "wedge2", -1),
                          ([a, quad, wild], "sym2", 1), ([a, quad, wild], "wedge2", -1)]:
        n = len(chars)
        sigma = WeilParam(chars)
        rho = r0_compose(sigma, r0, eta)
        dim = n * (n + pm) // 2
        expected = (sigma.det() ** (n + pm)) * (eta ** dim)
        assert rho.det() == expected
        assert rho.dim == dim


def test_artin_factors_products():
    f = field()
    psi = AddChar.canonical(f)
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    a = MultChar.unramified(f, Scalar.zeta(4))
    empty = artin_factors(WeilParam([]), psi)
    assert empty.L == empty.eps == empty.gamma == FactoredRF.one()
    single = artin_factors(WeilParam([a]), psi)
    assert single.L == tate_L(a)
    assert single.eps == tate_eps(a, psi)
    assert single.gamma == tate_gamma(a, psi)
    both = artin_factors(WeilParam([a, quad]), psi)
    assert both.gamma == tate_gamma(a, psi) * tate_gamma(quad, psi)


def test_galois_functional_equation():
    f = field()
    psi = AddChar.canonical(f)
    chars = enumerate_mult_chars(f, 2, pi_values=[Scalar.one(), Scalar.zeta(4)])
    rho = WeilParam(chars[:4])
    g = artin_factors(rho, psi).gamma
    g_dual = artin_factors(rho.dual(), psi.conjugate()).gamma
    assert g * g_dual.reflect() == FactoredRF.one()


def test_llc_match_small_grid():
    for p in (2, 3):
        f = field(p, 3)
        psi = AddChar.canonical(f)
        chars = enumerate_mult_chars(f, 1, pi_values=[Scalar.one(), Scalar.zeta(4)])
        etas = enumerate_mult_chars(f, 1)
        for r0 in ("sym2", "wedge2"):
            for eta in etas[:2]:
                for c1 in chars[:3]:
                    for c2 in chars[:3]:
                        req = TwistedFactorRequest(
                            PrincipalSeriesParam([c1, c2]), r0, eta, psi
                        )
                        report = llc_match(req)
                        assert report.all_equal


def test_llc_degree_one_sym2():
    f = field()
    psi = AddChar.canonical(f)
    quad = make_mult_char(f, 1, Scalar.one(), teich_image=(2, 1))
    eta = MultChar.unramified(f, Scalar.zeta(3))
    req = TwistedFactorRequest(PrincipalSeriesParam([quad]), "sym2", eta, psi)
    report = llc_match(req)
    assert report.gamma_analytic == tate_gamma(quad * quad * eta, psi)


def test_llc_spherical_L_matches_remark():
    f = field()
    psi = AddChar.canonical(f)
    chars = [MultChar.unramified(f, v) for v in (Scalar.one(), Scalar.zeta(4), Scalar.zeta(3))]
    eta = MultChar.unramified(f, Scalar.zeta(8))
    p = PrincipalSeriesParam(chars)
    req = TwistedFactorRequest(p, "sym2", eta, psi)
    report = llc_match(req)
    assert report.L_galois == spherical_L(p, "sym2", eta)


def test_deligne_transfer_and_purity():
    fa = make_field(3, 1, 6)
    fb = make_field(3, 1, 9)
    psi = AddChar.canonical(fa)
    quad = make_mult_char(fa, 1, Scalar.one(), teich_image=(2, 1))
    wild = make_mult_char(fa, 2, Scalar.one(), wild_images={(1, 0): (3, 1)})
    eta = make_mult_char(fa, 2, Scalar.zeta(4), wild_images={(1, 0): (3, 2)})
    cert = associate(fa, fb, 6, [quad, wild, eta], [psi])
    sigma = WeilParam([quad, wild])
    for r0 in ("sym2", "wedge2"):
        report = deligne_transfer(cert, sigma, r0, eta, psi)
        assert report.equal
        assert report.level_read_a <= 2
        assert report.level_read_b <= 2


def test_transfer_depth_gates():
    from localfactors.characters import (
        AssociationCertificate, transport_add_char, transport_mult_char,
    )

    fa = make_field(3, 1, 6)
    fb = make_field(3, 1, 9)
    psi = AddChar.canonical(fa)
    deep = make_mult_char(fa, 5, Scalar.one(), wild_images={(4, 0): (3, 1)})
    assert deep.depth == 4
    # depth just below the gate still transfers
    cert6 = associate(fa, fb, 6, [deep, MultChar.trivial(fa)], [psi])
    report = deligne_transfer(cert6, WeilParam([deep]), "sym2", MultChar.trivial(fa), psi)
    assert report.equal
    # at a level-5 certificate the same character is over the gate
    cert5 = AssociationCertificate(
        fa, fb, 5,
        [(deep, transport_mult_char(deep, fb)), (MultChar.trivial(fa), MultChar.trivial(fb))],
        [(psi, transport_add_char(psi, fb, 5))],
    )
    with pytest.raises(UsageError):
        deligne_transfer(cert5, WeilParam([deep]), "sym2", MultChar.trivial(fa), psi)
