"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as coefficient vectors over Q in the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N), reduced modulo the N-th cyclotomic
polynomial.  All operations are exact; binary operations between elements of
different orders promote both sides to the lcm order.  No floating point is
used anywhere except in the explicit complex embedding.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

Poly = tuple[Fraction, ...]  # dense, ascending degree

_F0 = Fraction(0)
_F1 = Fraction(1)


def _poly_trim(c: list[Fraction]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    # b must be nonzero; exact division over Q
    rem = list(a)
    quo = [_F0] * max(0, len(a) - len(b) + 1)
    db, lead = len(b) - 1, b[-1]
    while len(rem) - 1 >= db and any(rem):
        d = len(rem) - 1
        if rem[-1] == 0:
            rem.pop()
            continue
        coef = rem[-1] / lead
        quo[d - db] = coef
        for i in range(db + 1):
            rem[d - db + i] -= coef * b[i]
        rem.pop()
    return _poly_trim(quo), _poly_trim(rem)


def _poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = (_F1,), ()
    t0, t1 = (), (_F1,)
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _poly_trim([x - y for x, y in _zip_pad(t0, _poly_mul(q, t1))])
    return r0, s0, t0


def _zip_pad(a: Poly, b: Poly):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else _F0), (b[i] if i < len(b) else _F0)


@lru_cache(maxsize=None)
def _prime_divisors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _solve_exact(columns, target):
    """Solve sum_k d_k * columns[k] = target exactly, or return None."""
    rows = len(target)
    ncols = len(columns)
    aug = [[columns[k][i] for k in range(ncols)] + [target[i]] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    sol = [_F0] * ncols
    for i in range(r, rows):
        if aug[i][ncols] != 0:
            return None  # inconsistent
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][ncols]
    return sol


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n == 1:
        return (Fraction(-1), _F1)
    num: Poly = tuple([Fraction(-1)] + [_F0] * (n - 1) + [_F1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_poly(d))
            assert not rem
    return num


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[Poly, ...]:
    """x^(phi+i) mod Phi_n as length-phi rows, covering i up to max(n-1, 2phi-2)."""
    phi = euler_phi(n)
    mod = cyclotomic_poly(n)
    count = max(n - 1, 2 * phi - 2) - phi + 1
    rows: list[Poly] = []
    cur = [-c / mod[-1] for c in mod[:-1]]  # x^phi mod Phi_n
    for _ in range(max(0, count)):
        row = cur + [_F0] * (phi - len(cur))
        rows.append(tuple(row[:phi]))
        cur = [_F0] + list(rows[-1])
        if len(cur) > phi:
            top = cur.pop()
            if top:
                cur = [c + top * r for c, r in zip(cur, rows[0])]
    return tuple(rows)


def _reduce_exponents(n: int, terms: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Reduce a zeta-exponent combination to the canonical basis of Q(zeta_n)."""
    phi = euler_phi(n)
    vec = [_F0] * phi
    high: dict[int, Fraction] = {}
    for e, c in terms.items():
        e %= n
        if e < phi:
            vec[e] += c
        else:
            high[e] = high.get(e, _F0) + c
    if high:
        rows = _reduction_rows(n)
        for e, c in high.items():
            if c:
                row = rows[e - phi]
                for i in range(phi):
                    if row[i]:
                        vec[i] += c * row[i]
    return tuple(vec)


class Cyclo:
    """An exact element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_key", "_rou")

    def __init__(self, order: int, coeffs: tuple[Fraction, ...]):
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        phi = euler_phi(order)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for order {order}")
        self.order = order
        self.coeffs = coeffs
        self._key = None
        self._rou = False  # False = not computed yet; None = not a root

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(x) -> "Cyclo":
        return Cyclo(1, (Fraction(x),))

    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo.rational(0)

    @staticmethod
    def one() -> "Cyclo":
        return Cyclo.rational(1)

    @staticmethod
    def zeta(order: int, power: int = 1) -> "Cyclo":
        """zeta_order^power in canonical minimal-order form."""
        power %= order
        g = gcd(power, order) if power else order
        order, power = order // g, power // g
        if order == 1:
            out = Cyclo.one()
        elif order == 2:
            out = Cyclo.rational(-1)
        else:
            out = Cyclo(order, _reduce_exponents(order, {power: _F1}))._shrink()
        out._rou = (order, power)
        return out

    @staticmethod
    def from_zeta_counts(order: int, counts: dict[int, Fraction | int]) -> "Cyclo":
        """sum of c_e * zeta_order^e; used to collapse character sums at once."""
        terms = {e: Fraction(c) for e, c in counts.items() if c}
        if not terms:
            return Cyclo.zero()
        return Cyclo(order, _reduce_exponents(order, terms))._shrink()

    # -- structure ---------------------------------------------------------

    def _shrink(self) -> "Cyclo":
        """Rewrite at the minimal cyclotomic order containing the value.

        Keys and rendered output are therefore canonical: equal values always
        carry equal (order, coefficient) data regardless of how they arose.
        """
        cur = self
        if cur.order > 1 and all(c == 0 for c in cur.coeffs[1:]):
            return Cyclo(1, (cur.coeffs[0],))
        changed = True
        while changed and cur.order > 1:
            changed = False
            for p in _prime_divisors(cur.order):
                smaller = cur._descend(cur.order // p)
                if smaller is not None:
                    cur = smaller
                    changed = True
                    break
        return cur

    def _descend(self, m: int) -> "Cyclo | None":
        """Express self in Q(zeta_m) for m | order, or None if impossible."""
        n = self.order
        if m == 1:
            return Cyclo(1, (self.coeffs[0],)) if self.is_rational() else None
        # Fixed by Gal(Q(zeta_n)/Q(zeta_m)) = { j mod n : j = 1 mod m }?
        # (raw coefficient comparison at order n; __eq__ would recurse)
        for j in range(1 + m, n, m):
            if gcd(j, n) == 1 and self.galois_raw(j).coeffs != self.coeffs:
                return None
        basis = [Cyclo.zeta_raw(m, k).embed(n).coeffs for k in range(euler_phi(m))]
        sol = _solve_exact(basis, self.coeffs)
        if sol is None:
            return None
        return Cyclo(m, tuple(sol))

    def galois_raw(self, j: int) -> "Cyclo":
        """galois() without the shrink pass (internal)."""
        n = self.order
        if n == 1:
            return self
        terms = {(i * j) % n: c for i, c in enumerate(self.coeffs) if c}
        if not terms:
            return Cyclo.zero()
        return Cyclo(n, _reduce_exponents(n, terms))

    @staticmethod
    def zeta_raw(order: int, power: int) -> "Cyclo":
        power %= order
        if order == 1:
            return Cyclo.one()
        return Cyclo(order, _reduce_exponents(order, {power: _F1}))

    def embed(self, order: int) -> "Cyclo":
        """Re-embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot embed order {self.order} into {order}")
        k = order // self.order
        terms = {i * k: c for i, c in enumerate(self.coeffs) if c}
        return Cyclo(order, _reduce_exponents(order, terms))

    def _common(self, other: "Cyclo") -> tuple["Cyclo", "Cyclo", int]:
        n = self.order * other.order // gcd(self.order, other.order)
        return self.embed(n), other.embed(n), n

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Cyclo") -> "Cyclo":
        a, b, n = self._common(other)
        return Cyclo(n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))._shrink()

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        a, b, n = self._common(other)
        return Cyclo(n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))._shrink()

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        a, b, n = self._common(other)
        terms: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        terms[i + j] = terms.get(i + j, _F0) + x * y
        if not terms:
            return Cyclo.zero()
        return Cyclo(n, _reduce_exponents(n, terms))._shrink()

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self._rou not in (False, None):
            return Cyclo.zeta(self._rou[0], -self._rou[1])
        if self.order == 1:
            return Cyclo(1, (1 / self.coeffs[0],))
        g, s, _ = _poly_xgcd(_poly_trim(list(self.coeffs)), cyclotomic_poly(self.order))
        assert len(g) == 1  # Phi_N is irreducible over Q
        inv = [c / g[0] for c in s]
        _, rem = _poly_divmod(tuple(inv), cyclotomic_poly(self.order))
        vec = list(rem) + [_F0] * (euler_phi(self.order) - len(rem))
        return Cyclo(self.order, tuple(vec))._shrink()

    def __truediv__(self, other: "Cyclo") -> "Cyclo":
        return self * other.inverse()

    def __pow__(self, k: int) -> "Cyclo":
        rou = self.as_root_of_unity() if self._rou is not False else None
        if rou is not None:
            return Cyclo.zeta(rou[0], rou[1] * k)
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Cyclo.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, j: int) -> "Cyclo":
        """Apply zeta -> zeta^j (gcd(j, order) must be 1)."""
        n = self.order
        if n == 1:
            return self
        if gcd(j % n, n) != 1:
            raise ValueError("galois exponent not coprime to the order")
        terms = {(i * j) % n: c for i, c in enumerate(self.coeffs) if c}
        if not terms:
            return Cyclo.zero()
        return Cyclo(n, _reduce_exponents(n, terms))._shrink()

    def conj(self) -> "Cyclo":
        """Complex conjugation zeta -> zeta^(-1)."""
        return self.galois(self.order - 1) if self.order > 1 else self

    # -- predicates and views -----------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1 or all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def is_one(self) -> bool:
        return self.is_rational() and self.rational_value() == 1

    def as_root_of_unity(self) -> tuple[int, int] | None:
        """Return (N, k) with self == zeta_N^k in lowest terms, else None.

        The roots of unity inside Q(zeta_n) form mu_M with M = n for even n
        and M = 2n for odd n.  The candidate exponent is located numerically
        and then verified exactly.
        """
        if self._rou is not False:
            return self._rou
        self._rou = self._as_root_of_unity()
        return self._rou

    def _as_root_of_unity(self) -> tuple[int, int] | None:
        if self.is_rational():
            v = self.rational_value()
            if v == 1:
                return (1, 0)
            if v == -1:
                return (2, 1)
            return None
        if not self.norm_squared().is_one():
            return None
        m = self.order if self.order % 2 == 0 else 2 * self.order
        z = self.complex_value()
        k = round(cmath.phase(z) / (2 * cmath.pi) * m) % m
        if self == Cyclo.zeta(m, k):
            g = gcd(k, m) if k else m
            return (m // g, k // g)
        for k in range(1, m):  # exact fallback; should not trigger
            if self == Cyclo.zeta(m, k):
                g = gcd(k, m)
                return (m // g, k // g)
        return None

    def norm_squared(self) -> "Cyclo":
        """self * conj(self); totally real, rational for abelian Gauss sums."""
        return self * self.conj()

    # -- comparisons and rendering ------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self.key() == other.key()

    __hash__ = None  # containers key on .key() explicitly

    def key(self) -> tuple:
        """Canonical fingerprint: equal values have equal keys (the minimal
        cyclotomic order is unique and _shrink computes it)."""
        if self._key is None:
            s = self._shrink()
            self._key = (s.order, s.coeffs)
        return self._key

    def complex_value(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + complex(c)
        return out

    def __repr__(self) -> str:
        return f"Cyclo({self.order}, {self.coeffs})"

    def __str__(self) -> str:
        from .ratfunc import format_cyclo  # local import to keep layering simple

        return format_cyclo(self)
