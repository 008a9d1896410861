"""Factored rational functions in the formal variable Z = q^(-s).

Every L-, epsilon- and gamma-factor is kept in the multiplicative normal form

    unit * Z^k * prod_i (1 - c_i Z)^(e_i)

with exact Scalar coefficients; only multiplication, inversion and the three
substitutions shift / reflect / negate are ever needed, so no polynomial
expansion or factorization happens anywhere.  Zeros and poles away from Z = 0
are read off the factor keys exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .config import check_shift
from .cyclotomic import Cyclo
from .errors import PoleError, UsageError
from .scalar import Scalar


class FactoredRF:
    __slots__ = ("unit", "zpow", "factors")

    def __init__(self, unit: Scalar, zpow: int = 0, factors=()):
        if unit.is_zero():
            raise UsageError("exact-arith: zero is not a valid factored unit")
        self.unit = unit
        self.zpow = zpow
        self.factors = _canonical_factors(factors)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def one() -> "FactoredRF":
        return FactoredRF(Scalar.one())

    @staticmethod
    def from_scalar(c: Scalar) -> "FactoredRF":
        return FactoredRF(c)

    @staticmethod
    def monomial(unit: Scalar, zpow: int) -> "FactoredRF":
        return FactoredRF(unit, zpow)

    @staticmethod
    def linear(c: Scalar, exp: int = 1) -> "FactoredRF":
        """(1 - c*Z)^exp; c = 0 gives the constant 1."""
        if c.is_zero():
            return FactoredRF.one()
        return FactoredRF(Scalar.one(), 0, ((c, exp),))

    @staticmethod
    def euler(c: Scalar) -> "FactoredRF":
        """1 / (1 - c*Z); c = 0 gives the constant 1."""
        return FactoredRF.linear(c, -1)

    # -- algebra -------------------------------------------------------------

    def __mul__(self, other: "FactoredRF") -> "FactoredRF":
        return FactoredRF(
            self.unit * other.unit,
            self.zpow + other.zpow,
            tuple(self.factors) + tuple(other.factors),
        )

    def inverse(self) -> "FactoredRF":
        return FactoredRF(
            self.unit.inverse(),
            -self.zpow,
            tuple((c, -e) for c, e in self.factors),
        )

    def __truediv__(self, other: "FactoredRF") -> "FactoredRF":
        return self * other.inverse()

    def __pow__(self, k: int) -> "FactoredRF":
        if k == 0:
            return FactoredRF.one()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    # -- substitutions -------------------------------------------------------

    def shift(self, s0: Fraction | int) -> "FactoredRF":
        """s -> s + s0, i.e. Z -> q^(-s0) Z; s0 must lie on (1/d)Z."""
        s0 = check_shift(Fraction(s0))
        t = Scalar.qpow(-s0)
        return FactoredRF(
            self.unit * Scalar.qpow(-s0 * self.zpow),
            self.zpow,
            tuple((c * t, e) for c, e in self.factors),
        )

    def negate_s(self) -> "FactoredRF":
        """s -> -s, i.e. Z -> Z^(-1), renormalized to canonical form."""
        unit = self.unit
        zpow = -self.zpow
        factors = []
        for c, e in self.factors:
            # (1 - c/Z) = (-c) * Z^(-1) * (1 - c^(-1) Z)
            unit = unit * ((-c) ** e)
            zpow -= e
            factors.append((c.inverse(), e))
        return FactoredRF(unit, zpow, factors)

    def reflect(self) -> "FactoredRF":
        """s -> 1 - s, i.e. Z -> q^(-1) Z^(-1)."""
        return self.shift(1).negate_s()

    def conj_coefficients(self) -> "FactoredRF":
        return FactoredRF(
            self.unit.conj(), self.zpow, tuple((c.conj(), e) for c, e in self.factors)
        )

    # -- views ----------------------------------------------------------------

    def is_monomial(self) -> bool:
        return not self.factors

    def is_one(self) -> bool:
        return self.unit.is_one() and self.zpow == 0 and not self.factors

    def zeros_poles(self) -> tuple[list[Scalar], list[Scalar]]:
        """Zeros and poles in Z != 0 with multiplicity (monomial part excluded).

        A factor (1 - c Z)^e contributes the point c^(-1), e times, as a zero
        when e > 0 and as a pole when e < 0.
        """
        zeros: list[Scalar] = []
        poles: list[Scalar] = []
        for c, e in self.factors:
            point = c.inverse()
            (zeros if e > 0 else poles).extend([point] * abs(e))
        zeros.sort(key=Scalar.key)
        poles.sort(key=Scalar.key)
        return zeros, poles

    def evaluate(self, s: complex, q: int) -> complex:
        if q < 2:
            raise UsageError("exact-arith: numeric evaluation needs q >= 2")
        z = q ** (-complex(s))
        out = self.unit.cyclo.complex_value() * (q ** float(self.unit.qexp) + 0j)
        out *= z**self.zpow
        for c, e in self.factors:
            base = 1 - c.complex_value(q) * z
            if e < 0 and abs(base) < 1e-12:
                raise PoleError(
                    f"exact-arith: evaluation at a pole of (1 - {format_scalar(c)}*Z)^{e}"
                )
            out *= base**e
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRF):
            return NotImplemented
        if self.unit != other.unit or self.zpow != other.zpow:
            return False
        if len(self.factors) != len(other.factors):
            return False
        return all(
            c1 == c2 and e1 == e2
            for (c1, e1), (c2, e2) in zip(self.factors, other.factors)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"FactoredRF({self})"

    def __str__(self) -> str:
        return format_rf(self)


def _canonical_factors(factors) -> tuple[tuple[Scalar, int], ...]:
    merged: dict = {}  # canonical scalar key -> [scalar, exponent]
    for c, e in factors:
        if c.is_zero():
            raise UsageError("exact-arith: factor key must be nonzero")
        slot = merged.get(c.key())
        if slot is None:
            merged[c.key()] = [c, e]
        else:
            slot[1] += e
    out = [(c, e) for c, e in merged.values() if e != 0]
    out.sort(key=lambda ce: (ce[0].key(), ce[1]))
    return tuple(out)


# ---------------------------------------------------------------------------
# Pretty-printer and round-trip parser.
#
# Grammar (atoms joined by '*'):
#   rf      := part ('*' part)*
#   part    := 'Z^' INT | '(1 ' SIGN ' ' scalar '*Z)^' INT | atom
#   scalar  := atom ('*' atom)*          (product of atoms)
#   atom    := RAT | '-'? 'z_'N('^'K)? | '-'? 'q^'FRAC | '(' sum ')'
#   sum     := term (' + '|' - ' term)*
#   term    := RAT | (RAT '*')? 'z_'N('^'K)?
# Every emitted string re-parses to an equal canonical value.
# ---------------------------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return str(x)


def format_cyclo(c: Cyclo) -> str:
    if c.is_rational():
        return _frac_str(c.rational_value())
    n = c.order
    parts: list[str] = []
    for i, coef in enumerate(c.coeffs):
        if coef == 0:
            continue
        base = "" if i == 0 else ("z_%d" % n if i == 1 else "z_%d^%d" % (n, i))
        mag = abs(coef)
        if base and mag == 1:
            body = base
        elif base:
            body = f"{_frac_str(mag)}*{base}"
        else:
            body = _frac_str(mag)
        if not parts:
            parts.append(body if coef > 0 else "-" + body)
        else:
            parts.append((" + " if coef > 0 else " - ") + body)
    return "".join(parts)


def format_scalar(c: Scalar) -> str:
    """Render a scalar as a '*'-joined product of atoms."""
    if c.is_zero():
        return "0"
    cyc = c.cyclo
    atoms: list[str] = []
    if cyc.is_rational():
        v = cyc.rational_value()
        if v != 1 or c.qexp == 0:
            atoms.append(_frac_str(v))
    else:
        s = format_cyclo(cyc)
        one_term = sum(1 for x in cyc.coeffs if x != 0) == 1
        atoms.append(s if one_term else f"({s})")
    if c.qexp != 0:
        atoms.append(f"q^{_frac_str(c.qexp)}")
    return "*".join(atoms)


def format_rf(f: FactoredRF) -> str:
    parts: list[str] = []
    if not f.unit.is_one() or (f.zpow == 0 and not f.factors):
        parts.append(format_scalar(f.unit))
    if f.zpow != 0:
        parts.append(f"Z^{f.zpow}")
    for c, e in f.factors:
        s = format_scalar(c)
        sign = "-"
        if s.startswith("-"):
            sign, s = "+", format_scalar(-c)
        body = "Z" if s == "1" else f"{s}*Z"
        parts.append(f"(1 {sign} {body})^{e}")
    return "*".join(parts)


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


_RAT = r"-?\d+(?:/\d+)?"
_ATOM_RAT = re.compile(rf"^({_RAT})$")
_ATOM_ZETA = re.compile(r"^(-)?z_(\d+)(?:\^(\d+))?$")
_ATOM_QPOW = re.compile(rf"^(-)?q\^({_RAT})$")
_TERM = re.compile(rf"^(?:({_RAT})\*)?z_(\d+)(?:\^(\d+))?$")
_FACTOR = re.compile(r"^\(1 ([+-]) (?:(.*)\*)?Z\)\^(-?\d+)$")
_ZPOW = re.compile(r"^Z\^(-?\d+)$")


def _parse_sum(s: str) -> Cyclo:
    body = s[1:-1] if s.startswith("(") else s
    tokens = re.split(r" ([+-]) ", body)
    total = Cyclo.zero()
    sign = 1
    for tok in tokens:
        if tok == "+":
            sign = 1
        elif tok == "-":
            sign = -1
        else:
            m = _TERM.match(tok)
            if m:
                coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
                z = Cyclo.zeta(int(m.group(2)), int(m.group(3) or 1))
                total = total + Cyclo.rational(sign * coef) * z
            elif _ATOM_RAT.match(tok):
                total = total + Cyclo.rational(sign * Fraction(tok))
            else:
                raise UsageError(f"exact-arith: cannot parse cyclotomic term {tok!r}")
    return total


def _parse_atom(s: str) -> Scalar:
    m = _ATOM_RAT.match(s)
    if m:
        return Scalar.rational(Fraction(s))
    m = _ATOM_ZETA.match(s)
    if m:
        z = Scalar.zeta(int(m.group(2)), int(m.group(3) or 1))
        return -z if m.group(1) else z
    m = _ATOM_QPOW.match(s)
    if m:
        c = Scalar.qpow(Fraction(m.group(2)))
        return -c if m.group(1) else c
    if s.startswith("(") and s.endswith(")"):
        return Scalar(_parse_sum(s))
    raise UsageError(f"exact-arith: cannot parse scalar atom {s!r}")


def parse_scalar(s: str) -> Scalar:
    s = s.strip()
    if s.startswith("-(") and s.endswith(")"):
        return -parse_scalar(s[2:-1])
    out = Scalar.one()
    for atom in _split_top(s, "*"):
        out = out * _parse_atom(atom.strip())
    return out


def parse_rf(s: str) -> FactoredRF:
    """Parse the pretty-printer grammar back into a canonical FactoredRF."""
    s = s.strip()
    unit = Scalar.one()
    zpow = 0
    factors: list[tuple[Scalar, int]] = []
    for part in _split_top(s, "*"):
        part = part.strip()
        m = _ZPOW.match(part)
        if m:
            zpow += int(m.group(1))
            continue
        m = _FACTOR.match(part)
        if m:
            c = parse_scalar(m.group(2)) if m.group(2) else Scalar.one()
            if m.group(1) == "+":
                c = -c
            factors.append((c, int(m.group(3))))
            continue
        unit = unit * _parse_atom(part)
    return FactoredRF(unit, zpow, factors)
