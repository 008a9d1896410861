"""Scalars: exact cyclotomic numbers times a formal power of q.

A Scalar c * q^r is the coefficient type of every local factor.  The q-power
is formal (q is only given a value at numeric evaluation time); its exponent
lives on the (1/2d)Z lattice from :mod:`localfactors.config`.

A scalar may carry the residue-field size q = p^f it belongs to.  Tagged
scalars are kept in the canonical split c * q^r in which the rational content
of c has p-valuation in [0, f); this is what makes identities like
gamma * (reflected dual gamma) = 1 hold as equalities of canonical forms even
though Gauss-sum products produce the *integer* q^a.  Equality ignores the
tag and compares the split itself.  Nonzero scalars form a group under
multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .config import check_qexp
from .cyclotomic import Cyclo
from .errors import UsageError


@lru_cache(maxsize=None)
def _prime_power(q: int) -> tuple[int, int]:
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    f, m = 0, q
    while m % p == 0:
        m //= p
        f += 1
    if m != 1 or f == 0:
        raise UsageError(f"exact-arith: q = {q} is not a prime power")
    return p, f


def _vp(x: Fraction, p: int) -> int:
    v, n = 0, x.numerator if x.numerator > 0 else -x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


class Scalar:
    __slots__ = ("cyclo", "qexp", "q", "_key")

    def __init__(self, cyclo: Cyclo, qexp: Fraction | int = 0, q: int | None = None):
        self._key = None
        if cyclo.is_zero():
            self.cyclo, self.qexp, self.q = cyclo, Fraction(0), q
            return
        qexp = Fraction(qexp)
        if q is not None:
            p, f = _prime_power(q)
            vp = min(_vp(c, p) for c in cyclo.coeffs if c != 0)
            k = vp // f
            if k:
                scale = Fraction(1, p ** (f * k))
                cyclo = cyclo * Cyclo.rational(scale)
                qexp += k
        self.cyclo = cyclo
        self.qexp = check_qexp(qexp)
        self.q = q

    @staticmethod
    def _merge_q(a: "Scalar", b: "Scalar") -> int | None:
        if a.q is not None and b.q is not None and a.q != b.q:
            raise UsageError("exact-arith: scalars tagged with different q")
        return a.q if a.q is not None else b.q

    def with_q(self, q: int) -> "Scalar":
        return Scalar(self.cyclo, self.qexp, q)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one() -> "Scalar":
        return Scalar(Cyclo.one())

    @staticmethod
    def zero() -> "Scalar":
        return Scalar(Cyclo.zero())

    @staticmethod
    def rational(x) -> "Scalar":
        return Scalar(Cyclo.rational(x))

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Scalar":
        return Scalar(Cyclo.zeta(order, power))

    @staticmethod
    def qpow(r: Fraction | int) -> "Scalar":
        return Scalar(Cyclo.one(), Fraction(r))

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.cyclo * other.cyclo, self.qexp + other.qexp, Scalar._merge_q(self, other)
        )

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return self * other.inverse()

    def __neg__(self) -> "Scalar":
        return Scalar(-self.cyclo, self.qexp, self.q)

    def inverse(self) -> "Scalar":
        return Scalar(self.cyclo.inverse(), -self.qexp, self.q)

    def __pow__(self, k: int) -> "Scalar":
        return Scalar(self.cyclo**k, self.qexp * k, self.q)

    def __add__(self, other: "Scalar") -> "Scalar":
        # Partial operation: q-powers must agree, or differ by an integer
        # amount that a q-tag lets us fold back into the cyclotomic part.
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        q = Scalar._merge_q(self, other)
        a, b = self, other
        if a.qexp != b.qexp:
            d = a.qexp - b.qexp
            if q is None or d.denominator != 1:
                raise ValueError("cannot add scalars with different formal q-powers")
            lo = min(a.qexp, b.qexp)
            a = Scalar(a.cyclo * Cyclo.rational(q ** int(a.qexp - lo)), lo)
            b = Scalar(b.cyclo * Cyclo.rational(q ** int(b.qexp - lo)), lo)
        return Scalar(a.cyclo + b.cyclo, a.qexp, q)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def conj(self) -> "Scalar":
        # q is a positive integer, so conjugation fixes the q-power.
        return Scalar(self.cyclo.conj(), self.qexp, self.q)

    def norm_squared(self) -> "Scalar":
        return Scalar(self.cyclo.norm_squared(), 2 * self.qexp, self.q)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.cyclo.is_zero()

    def is_one(self) -> bool:
        return self.qexp == 0 and self.cyclo.is_one()

    def is_unitary(self) -> bool:
        """Modulus exactly 1: root-of-unity cyclo part and q^0."""
        return self.qexp == 0 and self.cyclo.norm_squared().is_one()

    def modulus_is_q_power(self) -> Fraction | None:
        """If |self| = q^t exactly (root-of-unity cyclo part), return t."""
        if self.cyclo.norm_squared().is_one():
            return self.qexp
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.key() == other.key()

    __hash__ = None

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.qexp, self.cyclo.key())
        return self._key

    def complex_value(self, q: int) -> complex:
        return self.cyclo.complex_value() * (q ** float(self.qexp))

    def __repr__(self) -> str:
        return f"Scalar({self.cyclo!r}, qexp={self.qexp})"

    def __str__(self) -> str:
        from .ratfunc import format_scalar

        return format_scalar(self)
