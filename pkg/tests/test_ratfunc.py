import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from localfactors.errors import PoleError, PrecisionError
from localfactors.ratfunc import FactoredRF, format_rf, parse_rf
from localfactors.scalar import Scalar


def lin(c, e=1):
    return FactoredRF.linear(c, e)


S1 = Scalar.one()
Z3 = Scalar.zeta(3)
Q = Scalar.qpow(1)


def test_inverse_pair_cancels():
    f = lin(S1) * lin(S1, -1)
    assert f == FactoredRF.one()


def test_exponent_addition():
    two = Scalar.rational(2)
    f = FactoredRF.monomial(S1, 1) * lin(two)
    g = FactoredRF.monomial(S1, 2) * lin(two)
    h = f * g
    assert h.zpow == 3
    assert h.factors == ((two, 2),)


def test_distinct_cyclotomic_keys_stay_separate_and_eval_matches():
    # (1 - z3 Z)(1 - z3^2 Z)(1 - Z) = 1 - Z^3 as functions
    f = lin(Z3) * lin(Scalar.zeta(3, 2)) * lin(S1)
    assert len(f.factors) == 3
    q, s = 7, Fraction(1, 2)  # Z = q^(-s) = 1/sqrt(7); also test at Z = 1/2 via q=4,s=1/2
    for (q, s) in [(4, 0.5), (9, 0.5)]:
        z = q ** (-s)
        lhs = f.evaluate(s, q)
        assert cmath.isclose(lhs, 1 - z**3, abs_tol=1e-12)


def test_eval_examples():
    # 1/(1-Z) at q=3, s=1 -> 1.5
    f = lin(S1, -1)
    assert cmath.isclose(f.evaluate(1, 3), 1.5, abs_tol=1e-12)
    # Z at q=2, s=0 -> 1
    f = FactoredRF.monomial(S1, 1)
    assert cmath.isclose(f.evaluate(0, 2), 1.0, abs_tol=1e-12)
    # (1-Z)/(1-qZ) at q=3, s=2 -> 4/3
    f = lin(S1) * lin(Q, -1)
    assert cmath.isclose(f.evaluate(2, 3), 4 / 3, abs_tol=1e-12)


def test_eval_at_pole_raises():
    f = lin(Q, -1)  # pole at Z = 1/q i.e. s = 1
    with pytest.raises(PoleError):
        f.evaluate(1, 3)


def test_shift_examples():
    c = Scalar.zeta(4)
    f = lin(c)
    g = f.shift(Fraction(1, 2))
    assert g.factors == ((c * Scalar.qpow(Fraction(-1, 2)), 1),)
    with pytest.raises(PrecisionError):
        f.shift(Fraction(1, 3))


def test_reflect_on_Z():
    f = FactoredRF.monomial(S1, 1)
    g = f.reflect()
    assert g.zpow == -1 and g.unit == Scalar.qpow(-1)


def test_substitution_algebra():
    f = FactoredRF.monomial(Scalar.rational(-1) * Q, 1) * lin(Z3) * lin(Q * Z3, -2)
    assert f.negate_s().negate_s() == f
    assert f.reflect().reflect() == f
    assert f.shift(Fraction(1, 2)).shift(Fraction(1, 2)) == f.shift(1)


def test_zeros_poles():
    two = Scalar.rational(2)
    f = lin(two)
    zeros, poles = f.zeros_poles()
    assert zeros == [two.inverse()] and poles == []
    # Z*(1-Z)/(1-qZ): zeros {1}, poles {q^-1}, monomial part excluded
    f = FactoredRF.monomial(S1, 1) * lin(S1) * lin(Q, -1)
    zeros, poles = f.zeros_poles()
    assert zeros == [S1] and poles == [Scalar.qpow(-1)]
    assert f.zpow == 1


def test_gamma_of_trivial_character_zeros_poles():
    # -qZ(1-Z)/(1-qZ) from the abelian theory
    f = FactoredRF.monomial(-Q, 1) * lin(S1) * lin(Q, -1)
    zeros, poles = f.zeros_poles()
    assert zeros == [S1]
    assert poles == [Scalar.qpow(-1)]


def test_conjugation_compatibility():
    f = FactoredRF.monomial(Z3, 2) * lin(Scalar.zeta(8, 3)) * lin(Q * Z3, -1)
    s = 0.3 + 0.7j
    lhs = f.evaluate(s.conjugate(), 5).conjugate()
    rhs = f.conj_coefficients().evaluate(s, 5)
    assert cmath.isclose(lhs, rhs, abs_tol=1e-10)


_scalars = st.sampled_from(
    [S1, -S1, Z3, Scalar.zeta(4), Q, Q * Z3, Scalar.qpow(Fraction(1, 2)),
     Scalar.rational(2), Scalar.zeta(5, 2) * Scalar.qpow(Fraction(-1, 2))]
)


@st.composite
def _rfs(draw):
    unit = draw(_scalars)
    zpow = draw(st.integers(-3, 3))
    fac = draw(st.lists(st.tuples(_scalars, st.integers(-2, 2)), max_size=4))
    return FactoredRF(unit, zpow, fac)


@settings(max_examples=60, deadline=None)
@given(_rfs(), _rfs(), _rfs())
def test_mul_laws_and_canonical_idempotence(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == FactoredRF(a.unit * a.unit.inverse())
    re = FactoredRF(a.unit, a.zpow, a.factors)
    assert re == a


@settings(max_examples=60, deadline=None)
@given(_rfs())
def test_substitutions_are_exact_involutions(f):
    assert f.negate_s().negate_s() == f
    assert f.reflect().reflect() == f


@settings(max_examples=80, deadline=None)
@given(_rfs())
def test_print_parse_roundtrip(f):
    s = format_rf(f)
    assert parse_rf(s) == f
    assert format_rf(parse_rf(s)) == s
