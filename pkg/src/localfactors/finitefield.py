"""Arithmetic in F_q for q = p^f <= 64.

Extension fields use a fixed table of Conway-style defining polynomials in
which the class of x is a primitive element (validated at construction).
Elements are coefficient tuples over F_p in the power basis of x.
"""

from __future__ import annotations

from functools import lru_cache

FqElt = tuple[int, ...]

# ascending coefficients of the defining polynomial, including the leading 1
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _primitive_root(p: int) -> int:
    order = p - 1
    primes = []
    m, d = order, 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    for g in range(2, p):
        if all(pow(g, order // r, p) != 1 for r in primes):
            return g
    raise ValueError(f"no primitive root mod {p}")


class Fq:
    """The finite field with q = p^f elements."""

    def __init__(self, p: int, f: int = 1):
        if not _is_prime(p):
            raise ValueError(f"residue characteristic {p} is not prime")
        if f < 1 or p**f > 64:
            raise ValueError("only q = p^f <= 64 is supported")
        self.p, self.f, self.q = p, f, p**f
        if f == 1:
            self.modulus = None
            gen = _primitive_root(p) if p > 2 else 1
            self.gen: FqElt = (gen % p,)
        else:
            if (p, f) not in _CONWAY:
                raise ValueError(f"no defining polynomial on file for q = {p}^{f}")
            self.modulus = _CONWAY[(p, f)]
            self.gen = tuple([0, 1] + [0] * (f - 2))
        self.zero: FqElt = (0,) * f
        self.one: FqElt = tuple([1] + [0] * (f - 1))
        self._exp: list[FqElt] = [self.one]
        x = self.one
        for _ in range(self.q - 2):
            x = self.mul(x, self.gen)
            self._exp.append(x)
        self._log = {e: i for i, e in enumerate(self._exp)}
        if len(self._log) != self.q - 1:
            raise ValueError(f"generator of F_{self.q} is not primitive")

    # -- element ops ---------------------------------------------------------

    def elt(self, value: int) -> FqElt:
        """Decode the integer encoding sum(c_i p^i) of a coefficient vector."""
        if not 0 <= value < self.q:
            raise ValueError(f"F_{self.q} element code out of range: {value}")
        out = []
        for _ in range(self.f):
            out.append(value % self.p)
            value //= self.p
        return tuple(out)

    def encode(self, a: FqElt) -> int:
        out = 0
        for c in reversed(a):
            out = out * self.p + c
        return out

    def add(self, a: FqElt, b: FqElt) -> FqElt:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: FqElt, b: FqElt) -> FqElt:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: FqElt) -> FqElt:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: FqElt, b: FqElt) -> FqElt:
        if self.f == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = [0] * (2 * self.f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % self.p
        for d in range(len(prod) - 1, self.f - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(self.f):
                    prod[d - self.f + i] = (prod[d - self.f + i] - c * self.modulus[i]) % self.p
        return tuple(prod[: self.f])

    def inv(self, a: FqElt) -> FqElt:
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.pow(a, self.q - 2)

    def pow(self, a: FqElt, k: int) -> FqElt:
        if k < 0:
            return self.pow(self.inv(a), -k)
        out, base = self.one, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a: FqElt, times: int = 1) -> FqElt:
        """x -> x^(p^times); order f."""
        t = times % self.f
        return self.pow(a, self.p**t) if t else a

    def frobenius_inverse(self, a: FqElt, times: int = 1) -> FqElt:
        """Inverse of x -> x^(p^times)."""
        t = (-times) % self.f
        return self.pow(a, self.p**t) if t else a

    def trace(self, a: FqElt) -> int:
        """Trace to F_p, as an integer in [0, p)."""
        acc, cur = self.zero, a
        for _ in range(self.f):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.p)
        return acc[0]

    def dlog(self, a: FqElt) -> int:
        """Discrete log base the fixed generator; a must be nonzero."""
        if a == self.zero:
            raise ZeroDivisionError("dlog of 0")
        return self._log[a]

    def elements(self):
        return (self.elt(v) for v in range(self.q))

    def basis(self) -> list[FqElt]:
        """F_p-basis 1, x, ..., x^(f-1)."""
        out = []
        for j in range(self.f):
            v = [0] * self.f
            v[j] = 1
            out.append(tuple(v))
        return out


@lru_cache(maxsize=None)
def get_fq(p: int, f: int) -> Fq:
    return Fq(p, f)
