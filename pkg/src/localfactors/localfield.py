"""Canonical finite-level model of a non-archimedean local field.

Every m-close equivalence class of local fields with residue field F_q is
represented by the single ring R_m = F_q[t]/(t^m); elements of the field
itself are carried as t^v * (unit known to level m).  A context-local access
tracker records the highest t-coefficient index any computation reads, which
is what the close-field transfer checks audit.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache

from . import cache
from .errors import PrecisionError, UsageError
from .finitefield import Fq, FqElt, get_fq

RElt = tuple[FqElt, ...]  # coefficients of 1, t, ..., t^(m-1)


class ReadTracker:
    __slots__ = ("max_index",)

    def __init__(self):
        self.max_index = -1

    def note(self, index: int) -> None:
        if index > self.max_index:
            self.max_index = index

    @property
    def level_read(self) -> int:
        """Highest truncation level consulted (0 = no element data read)."""
        return self.max_index + 1


_TRACKER: contextvars.ContextVar[ReadTracker | None] = contextvars.ContextVar(
    "localfactors_read_tracker", default=None
)


@contextmanager
def track_reads():
    """Fresh per-computation tracker; never shared between computations."""
    tracker = ReadTracker()
    token = _TRACKER.set(tracker)
    try:
        yield tracker
    finally:
        _TRACKER.reset(token)


def _note(index: int) -> None:
    tr = _TRACKER.get()
    if tr is not None and index >= 0:
        tr.note(index)


def purity_check(computation):
    """Run a computation under a fresh tracker; return (result, level_read)."""
    with track_reads() as tr:
        result = computation()
    return result, tr.level_read


class TruncatedField:
    """The ring R_m = F_q[t]/(t^m) with tracked coefficient access."""

    def __init__(self, p: int, f: int, level: int):
        if level < 1:
            raise UsageError("local-field: level must be >= 1")
        self.fq: Fq = get_fq(p, f)
        self.p, self.f, self.q = p, f, self.fq.q
        self.level = level
        self.zero: RElt = (self.fq.zero,) * level
        self.one: RElt = tuple([self.fq.one] + [self.fq.zero] * (level - 1))
        self._dlog_memo: dict = {}
        self._reps_memo: dict = {}

    # -- identity ------------------------------------------------------------

    def key(self) -> tuple:
        return (self.p, self.f, self.level)

    def same_residue(self, other: "TruncatedField") -> bool:
        return (self.p, self.f) == (other.p, other.f)

    def at_level(self, level: int) -> "TruncatedField":
        return _field_at(self.p, self.f, level)

    def __repr__(self) -> str:
        return f"TruncatedField(p={self.p}, f={self.f}, level={self.level})"

    # -- element plumbing ------------------------------------------------------

    def from_codes(self, codes) -> RElt:
        codes = list(codes)
        if len(codes) > self.level:
            raise UsageError("local-field: too many coefficients for the level")
        codes += [0] * (self.level - len(codes))
        return tuple(self.fq.elt(c) for c in codes)

    def to_codes(self, x: RElt) -> list[int]:
        return [self.fq.encode(c) for c in x]

    def constant(self, c: FqElt) -> RElt:
        return tuple([c] + [self.fq.zero] * (self.level - 1))

    def coeff(self, x: RElt, i: int) -> FqElt:
        _note(i)
        return x[i]

    def truncate(self, x: RElt, level: int) -> RElt:
        """Image in R_level (level <= len(x)); a tracked read of levels < level."""
        if level > len(x):
            raise PrecisionError(
                f"local-field: need level {level} but element has level {len(x)}"
            )
        _note(level - 1)
        return x[:level]

    def lift(self, x: RElt, rng=None) -> RElt:
        """Lift a lower-level element to this level.

        Digits above the given data are zero by default; a caller who wants to
        certify purity may pass an rng to fill them with junk instead.
        """
        pad = self.level - len(x)
        if pad < 0:
            raise UsageError("local-field: lift target below element level")
        if rng is None:
            return x + (self.fq.zero,) * pad
        return x + tuple(self.fq.elt(rng.randrange(self.q)) for _ in range(pad))

    # -- ring ops (tracked) -----------------------------------------------------

    def add(self, x: RElt, y: RElt) -> RElt:
        _note(self.level - 1)
        return tuple(self.fq.add(a, b) for a, b in zip(x, y))

    def neg(self, x: RElt) -> RElt:
        _note(self.level - 1)
        return tuple(self.fq.neg(a) for a in x)

    def sub(self, x: RElt, y: RElt) -> RElt:
        return self.add(x, self.neg(y))

    def mul(self, x: RElt, y: RElt) -> RElt:
        _note(self.level - 1)
        fq, m = self.fq, self.level
        out = [fq.zero] * m
        for i, a in enumerate(x):
            if a != fq.zero:
                for j, b in enumerate(y):
                    if i + j >= m:
                        break
                    if b != fq.zero:
                        out[i + j] = fq.add(out[i + j], fq.mul(a, b))
        return tuple(out)

    def mul_all(self, xs) -> RElt:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def pow(self, x: RElt, k: int) -> RElt:
        if k < 0:
            return self.pow(self.inv(x), -k)
        out, base = self.one, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, x: RElt) -> RElt:
        """Inverse of a unit, by triangular back-substitution."""
        fq, m = self.fq, self.level
        if x[0] == fq.zero:
            raise UsageError("local-field: inverse of a non-unit")
        _note(m - 1)
        c0 = fq.inv(x[0])
        out = [c0] + [fq.zero] * (m - 1)
        for i in range(1, m):
            s = fq.zero
            for k in range(i):
                s = fq.add(s, fq.mul(x[i - k], out[k]))
            out[i] = fq.neg(fq.mul(c0, s))
        return tuple(out)

    def is_unit(self, x: RElt) -> bool:
        return x[0] != self.fq.zero

    def valuation(self, x: RElt) -> int | None:
        for i, c in enumerate(x):
            if c != self.fq.zero:
                return i
        return None

    # -- unit group structure ----------------------------------------------------

    def wild_generator_indices(self) -> list[tuple[int, int]]:
        """(i, j) for the generators 1 + x^j t^i of 1 + tR, p not dividing i."""
        return [
            (i, j)
            for i in range(1, self.level)
            if i % self.p != 0
            for j in range(self.f)
        ]

    def wild_order_exponent(self, i: int) -> int:
        """e with (1 + c t^i) of order p^e in R_level."""
        e = 0
        while i * self.p**e < self.level:
            e += 1
        return e

    def wild_generator(self, i: int, j: int) -> RElt:
        fq = self.fq
        out = [fq.zero] * self.level
        out[0] = fq.one
        out[i] = fq.basis()[j]
        return tuple(out)

    def unit_group(self) -> "UnitGroupStruct":
        gens = [
            (ij, self.p ** self.wild_order_exponent(ij[0]), self.wild_generator(*ij))
            for ij in self.wild_generator_indices()
        ]
        return UnitGroupStruct(self, self.constant(self.fq.gen), gens)

    def unit_dlog(self, u: RElt, level: int | None = None) -> tuple[int, dict]:
        """Express u = g^(e0) * prod (1 + x^j t^i)^(e_ij) in (R_level)^x.

        Reads coefficients strictly below `level` only.
        """
        level = self.level if level is None else level
        if cache.enabled():
            key = (level, u[:level])
            hit = self._dlog_memo.get(key)
            if hit is None:
                hit = self._dlog_memo[key] = self._unit_dlog_raw(u, level)
            return hit
        return self._unit_dlog_raw(u, level)

    def _unit_dlog_raw(self, u: RElt, level: int) -> tuple[int, dict]:
        sub = self.at_level(level)
        fq = self.fq
        cur = sub.truncate(u, level)
        if cur[0] == fq.zero:
            raise UsageError("local-field: dlog of a non-unit")
        e0 = fq.dlog(cur[0])
        cur = sub.mul(cur, sub.constant(fq.inv(cur[0])))
        wild: dict[tuple[int, int], int] = {}
        for i in range(1, level):
            b = cur[i]
            if b == fq.zero:
                continue
            e = 0
            i0 = i
            while i0 % self.p == 0:
                i0 //= self.p
                e += 1
            c = fq.frobenius_inverse(b, e)
            correction = sub.one
            for j, beta in enumerate(c):
                if beta:
                    key = (i0, j)
                    wild[key] = wild.get(key, 0) + beta * self.p**e
                    correction = sub.mul(
                        correction, sub.pow(sub.wild_generator(i0, j), beta * self.p**e)
                    )
            cur = sub.mul(cur, sub.inv(correction))
        assert cur == sub.one
        return e0, wild

    def unit_reps(self, level: int | None = None, rng=None):
        """Deterministic Teichmueller x (1+p) enumeration of (R_level)^x,
        lifted to this field's level (junk digits above when rng is given)."""
        level = self.level if level is None else level
        if rng is None and cache.enabled():
            hit = self._reps_memo.get(level)
            if hit is None:
                hit = self._reps_memo[level] = tuple(self._unit_reps_raw(level, None))
            return hit
        return self._unit_reps_raw(level, rng)

    def _unit_reps_raw(self, level: int, rng):
        sub = self.at_level(level)
        gens = [
            (sub.p ** sub.wild_order_exponent(i), sub.wild_generator(i, j))
            for (i, j) in sub.wild_generator_indices()
        ]
        teich = [sub.constant(c) for c in sub.fq._exp]

        def emit(prefix: RElt, rest: list) -> list:
            if not rest:
                return [prefix]
            order, g = rest[0]
            out = []
            power = sub.one
            for _ in range(order):
                out.extend(emit(sub.mul(prefix, power), rest[1:]))
                power = sub.mul(power, g)
            return out

        for t in teich:
            for u in emit(t, gens):
                yield self.lift(u, rng=rng)


@lru_cache(maxsize=None)
def _field_at(p: int, f: int, level: int) -> TruncatedField:
    return TruncatedField(p, f, level)


def make_field(p: int, f: int, level: int) -> TruncatedField:
    return _field_at(p, f, level)


@dataclass(frozen=True)
class UnitGroupStruct:
    """Generators of (R_m)^x: Teichmueller part plus pro-p part, with a solver."""

    field: TruncatedField
    teich_gen: RElt
    wild_gens: list  # [((i, j), order, element)]

    def order(self) -> int:
        return (self.field.q - 1) * self.field.q ** (self.field.level - 1)

    def dlog(self, u: RElt) -> tuple[int, dict]:
        return self.field.unit_dlog(u)

    def rebuild(self, e0: int, wild: dict) -> RElt:
        out = self.field.pow(self.teich_gen, e0)
        for (ij, _order, g) in self.wild_gens:
            e = wild.get(ij, 0)
            if e:
                out = self.field.mul(out, self.field.pow(g, e))
        return out


class FieldElt:
    """t^v * unit with the unit known to the field's level; or zero."""

    __slots__ = ("field", "v", "unit")

    def __init__(self, field: TruncatedField, v: int = 0, unit: RElt | None = None):
        self.field = field
        if unit is None:
            self.v, self.unit = 0, None  # zero
            return
        if not field.is_unit(unit):
            w = field.valuation(unit)
            if w is None:
                raise UsageError(
                    "local-field: ambiguous zero element; pass unit=None for 0"
                )
            # normalize t^v * (t^w u) -> t^(v+w) u, padding unknown digits with 0
            unit = field.lift(unit[w:])
            v += w
        self.v, self.unit = v, unit

    @staticmethod
    def zero(field: TruncatedField) -> "FieldElt":
        return FieldElt(field, 0, None)

    @staticmethod
    def one(field: TruncatedField) -> "FieldElt":
        return FieldElt(field, 0, field.one)

    @staticmethod
    def uniformizer(field: TruncatedField, power: int = 1) -> "FieldElt":
        return FieldElt(field, power, field.one)

    def is_zero(self) -> bool:
        return self.unit is None

    def __mul__(self, other: "FieldElt") -> "FieldElt":
        if self.field is not other.field:
            raise UsageError("local-field: elements of different fields")
        if self.is_zero() or other.is_zero():
            return FieldElt.zero(self.field)
        return FieldElt(self.field, self.v + other.v, self.field.mul(self.unit, other.unit))

    def inverse(self) -> "FieldElt":
        if self.is_zero():
            raise ZeroDivisionError("local-field: inverse of zero")
        return FieldElt(self.field, -self.v, self.field.inv(self.unit))

    def __neg__(self) -> "FieldElt":
        if self.is_zero():
            return self
        return FieldElt(self.field, self.v, self.field.neg(self.unit))

    def key(self) -> tuple:
        if self.is_zero():
            return ("zero",)
        return (self.v, self.field.to_codes(self.unit))

    def __repr__(self) -> str:
        if self.is_zero():
            return "FieldElt(0)"
        return f"FieldElt(t^{self.v} * {self.field.to_codes(self.unit)})"


def depth_and_bounds(n: int, m: int) -> tuple[int, int]:
    """Conductor bound n^2 m + n^2 and default association level bound + 4."""
    if n < 1 or m < 0:
        raise UsageError("local-field: need n >= 1 and m >= 0")
    bound = n * n * m + n * n
    return bound, bound + 4
