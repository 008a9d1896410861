"""Depth-bounded multiplicative and additive characters, and the close-field
association that transports them between canonical models.

A multiplicative character is stored by its value at the uniformizer (an
exact Scalar, root of unity times a formal q-power) plus root-of-unity images
of the unit-group generators; it is evaluable on any coset x(1 + p^m).  An
additive character is its conductor plus a scale unit against the canonical
residue character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import cache
from .errors import AssociationError, PrecisionError, UsageError, ValidationError
from .localfield import FieldElt, RElt, TruncatedField
from .scalar import Scalar

Root = tuple[int, int]  # (order, power) in lowest terms

ROOT_ONE: Root = (1, 0)

_COMBINE_MEMO: dict = {}


def root_normalize(order: int, power: int) -> Root:
    power %= order
    if power == 0:
        return ROOT_ONE
    g = gcd(power, order)
    return (order // g, power // g)


def root_mul(a: Root, b: Root) -> Root:
    n = a[0] * b[0] // gcd(a[0], b[0])
    return root_normalize(n, a[1] * (n // a[0]) + b[1] * (n // b[0]))


def root_pow(a: Root, k: int) -> Root:
    return root_normalize(a[0], a[1] * k)


def root_scalar(a: Root, q: int | None = None) -> Scalar:
    return Scalar(Scalar.zeta(a[0], a[1]).cyclo, 0, q)


class MultChar:
    """A character of F^x trivial on 1 + p^a, with a < field level."""

    __slots__ = ("field", "conductor", "pi_value", "teich_image", "wild_images")

    def __init__(
        self,
        field: TruncatedField,
        conductor: int,
        pi_value: Scalar,
        teich_image: Root = ROOT_ONE,
        wild_images: dict[tuple[int, int], Root] | None = None,
    ):
        wild_images = {k: v for k, v in (wild_images or {}).items() if v != ROOT_ONE}
        if pi_value.is_zero() or pi_value.cyclo.as_root_of_unity() is None:
            raise ValidationError(
                "local-field: pi-value must be a root of unity times a q-power"
            )
        if teich_image != ROOT_ONE and (field.q - 1) % teich_image[0] != 0:
            raise ValidationError("local-field: Teichmueller image order must divide q-1")
        gen_ok = set(field.wild_generator_indices())
        for (i, j), (order, _power) in wild_images.items():
            if (i, j) not in gen_ok:
                raise ValidationError(f"local-field: no unit-group generator at {(i, j)}")
            e = 0
            while order % field.p == 0:
                order //= field.p
                e += 1
            if order != 1:
                raise ValidationError("local-field: wild image order must be a p-power")
            if e > field.wild_order_exponent(i):
                raise ValidationError(
                    f"local-field: image order exceeds generator order at {(i, j)}"
                )
        true_cond = _conductor_from_images(field, teich_image, wild_images)
        if true_cond != conductor:
            raise ValidationError(
                f"local-field: claimed conductor {conductor} but images trivialize "
                f"exactly on 1+p^{true_cond}"
            )
        if conductor >= field.level:
            raise ValidationError(
                f"local-field: conductor {conductor} needs depth < level {field.level}"
            )
        self.field = field
        self.conductor = conductor
        self.pi_value = pi_value.with_q(field.q)
        self.teich_image = teich_image
        self.wild_images = wild_images

    # -- construction helpers ---------------------------------------------------

    @staticmethod
    def trivial(field: TruncatedField) -> "MultChar":
        return MultChar(field, 0, Scalar.one())

    @staticmethod
    def unramified(field: TruncatedField, pi_value: Scalar) -> "MultChar":
        return MultChar(field, 0, pi_value)

    @property
    def depth(self) -> int:
        return max(self.conductor - 1, 0)

    def is_unitary(self) -> bool:
        return self.pi_value.qexp == 0

    def is_unramified(self) -> bool:
        return self.conductor == 0

    # -- evaluation ----------------------------------------------------------------

    def unit_root(self, u: RElt) -> Root:
        """Value on a unit, as an exact root of unity."""
        if self.conductor == 0:
            return ROOT_ONE
        e0, wild = self.field.unit_dlog(u, level=self.conductor)
        out = root_pow(self.teich_image, e0)
        for ij, e in wild.items():
            img = self.wild_images.get(ij)
            if img is not None and e:
                out = root_mul(out, root_pow(img, e))
        return out

    def __call__(self, x: FieldElt) -> Scalar:
        if x.is_zero():
            raise UsageError("local-field: character evaluated at 0")
        if x.field is not self.field:
            raise UsageError("local-field: element from a different field")
        return (self.pi_value ** x.v) * root_scalar(self.unit_root(x.unit), self.field.q)

    # -- group operations -------------------------------------------------------------

    def _combine(self, other: "MultChar", powers: tuple[int, int]) -> "MultChar":
        if self.field is not other.field:
            raise UsageError("local-field: characters on different fields")
        if cache.enabled():
            key = (self.key(), other.key(), powers)
            hit = _COMBINE_MEMO.get(key)
            if hit is None:
                hit = _COMBINE_MEMO[key] = self._combine_raw(other, powers)
            return hit
        return self._combine_raw(other, powers)

    def _combine_raw(self, other: "MultChar", powers: tuple[int, int]) -> "MultChar":
        k1, k2 = powers
        teich = root_mul(root_pow(self.teich_image, k1), root_pow(other.teich_image, k2))
        wild: dict[tuple[int, int], Root] = {}
        for ij in set(self.wild_images) | set(other.wild_images):
            r = root_mul(
                root_pow(self.wild_images.get(ij, ROOT_ONE), k1),
                root_pow(other.wild_images.get(ij, ROOT_ONE), k2),
            )
            if r != ROOT_ONE:
                wild[ij] = r
        cond = _conductor_from_images(self.field, teich, wild)
        return MultChar(
            self.field,
            cond,
            (self.pi_value**k1) * (other.pi_value**k2),
            teich,
            wild,
        )

    def __mul__(self, other: "MultChar") -> "MultChar":
        return self._combine(other, (1, 1))

    def inverse(self) -> "MultChar":
        return self._combine(self, (-1, 0))

    def __pow__(self, k: int) -> "MultChar":
        return self._combine(self, (k, 0))

    def unramified_twist(self, s0: Fraction | int) -> "MultChar":
        """Multiply by the unramified character with pi-value q^(-s0)."""
        return MultChar(
            self.field,
            self.conductor,
            self.pi_value * Scalar.qpow(-Fraction(s0)),
            self.teich_image,
            self.wild_images,
        )

    def key(self) -> tuple:
        return (
            self.field.key(),
            self.conductor,
            self.pi_value.key(),
            self.teich_image,
            tuple(sorted(self.wild_images.items())),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, MultChar) and self.key() == other.key()

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"MultChar(cond={self.conductor}, pi={self.pi_value}, "
            f"teich={self.teich_image}, wild={self.wild_images})"
        )


def _conductor_from_images(field, teich: Root, wild: dict) -> int:
    cond = 0
    if teich != ROOT_ONE:
        cond = 1
    for (i, _j), (order, _p) in wild.items():
        w = 0
        while order > 1:
            order //= field.p
            w += 1
        cond = max(cond, i * field.p ** (w - 1) + 1)
    return cond


def make_mult_char(field, conductor, pi_value, teich_image=ROOT_ONE, wild_images=None):
    """Spec-surface constructor; validates that the images realize the claimed
    conductor exactly."""
    return MultChar(field, conductor, pi_value, teich_image, wild_images)


class AddChar:
    """psi trivial on p^n, nontrivial on p^(n-1), with scale unit u:
    psi(x) = psi_0(residue coefficient of u * t^(-n) * x)."""

    __slots__ = ("field", "conductor", "scale_unit")

    def __init__(self, field: TruncatedField, conductor: int = 0, scale_unit: RElt | None = None):
        self.field = field
        self.conductor = conductor
        self.scale_unit = field.one if scale_unit is None else scale_unit
        if not field.is_unit(self.scale_unit):
            raise ValidationError("local-field: additive scale must be a unit")

    @staticmethod
    def canonical(field: TruncatedField) -> "AddChar":
        return AddChar(field, 0)

    def value_root(self, x: FieldElt) -> Root:
        """psi(x) as an exact p-th root of unity."""
        if x.is_zero():
            return ROOT_ONE
        if x.field is not self.field:
            raise UsageError("local-field: element from a different field")
        idx = self.conductor - x.v - 1
        if idx < 0:
            return ROOT_ONE
        if idx >= self.field.level:
            raise PrecisionError(
                f"local-field: psi needs coefficient index {idx} beyond level "
                f"{self.field.level}"
            )
        sub = self.field.at_level(idx + 1)
        w = sub.mul(sub.truncate(self.scale_unit, idx + 1), sub.truncate(x.unit, idx + 1))
        tr = self.field.fq.trace(sub.coeff(w, idx))
        return root_normalize(self.field.p, tr)

    def __call__(self, x: FieldElt) -> Scalar:
        return root_scalar(self.value_root(x), self.field.q)

    def scaled(self, a: FieldElt) -> "AddChar":
        """psi^a(x) = psi(a x); conductor drops by v(a)."""
        if a.is_zero():
            raise UsageError("local-field: psi^a needs a nonzero a")
        return AddChar(
            self.field, self.conductor - a.v, self.field.mul(self.scale_unit, a.unit)
        )

    def conjugate(self) -> "AddChar":
        """Complex conjugate = psi^(-1)."""
        return AddChar(self.field, self.conductor, self.field.neg(self.scale_unit))

    def key(self) -> tuple:
        return (self.field.key(), self.conductor, tuple(self.field.to_codes(self.scale_unit)))

    def __eq__(self, other) -> bool:
        return isinstance(other, AddChar) and self.key() == other.key()

    __hash__ = None

    def __repr__(self) -> str:
        return f"AddChar(cond={self.conductor}, scale={self.field.to_codes(self.scale_unit)})"


# ---------------------------------------------------------------------------
# Close-field association (canonical models: the level-l isomorphism is the
# identity on coefficient vectors).
# ---------------------------------------------------------------------------


@dataclass
class AssociationCertificate:
    field_a: TruncatedField
    field_b: TruncatedField
    level: int
    mult_pairs: list[tuple[MultChar, MultChar]]
    add_pairs: list[tuple[AddChar, AddChar]]

    def transported_mult(self, chi: MultChar) -> MultChar:
        for a, b in self.mult_pairs:
            if a is chi or a == chi:
                return b
        raise AssociationError("local-field: character not covered by certificate")

    def transported_add(self, psi: AddChar) -> AddChar:
        for a, b in self.add_pairs:
            if a is psi or a == psi:
                return b
        raise AssociationError("local-field: additive character not covered")


def transport_mult_char(chi: MultChar, target: TruncatedField) -> MultChar:
    return MultChar(target, chi.conductor, chi.pi_value, chi.teich_image, chi.wild_images)


def transport_add_char(psi: AddChar, target: TruncatedField, level: int) -> AddChar:
    scale = target.lift(psi.scale_unit[: min(level, len(psi.scale_unit))])
    return AddChar(target, psi.conductor, scale)


def associate(
    field_a: TruncatedField,
    field_b: TruncatedField,
    level: int,
    mult_chars=(),
    add_chars=(),
) -> AssociationCertificate:
    """Build the level-l association certificate, transporting characters A -> B.

    Multiplicative characters must have depth < l - 1; transported additive
    characters agree with their sources on p^(k-l)/p^k by construction, which
    is validated digit by digit.
    """
    if not field_a.same_residue(field_b):
        raise AssociationError("local-field: residue data (p, f) mismatch")
    if field_a.level < level or field_b.level < level:
        raise AssociationError(
            f"local-field: both fields must have level >= {level}"
        )
    mult_pairs = []
    for chi in mult_chars:
        if chi.depth >= level - 1:
            raise AssociationError(
                f"local-field: depth {chi.depth} too large for association level {level}"
            )
        other = transport_mult_char(chi, field_b)
        assert other.conductor == chi.conductor
        mult_pairs.append((chi, other))
    add_pairs = []
    for psi in add_chars:
        other = transport_add_char(psi, field_b, level)
        for idx in range(min(level, field_a.level, field_b.level)):
            if field_a.fq.encode(psi.scale_unit[idx]) != field_b.fq.encode(other.scale_unit[idx]):
                raise AssociationError("local-field: additive windows disagree")
        add_pairs.append((psi, other))
    return AssociationCertificate(field_a, field_b, level, mult_pairs, add_pairs)


def enumerate_mult_chars(
    field: TruncatedField, max_conductor: int, pi_values=(Scalar.one(),)
):
    """All characters with conductor <= max_conductor, each with every listed
    pi-value; deterministic order."""
    if max_conductor >= field.level:
        raise UsageError("local-field: conductor bound must stay below the level")
    sub_indices = [
        (i, j) for (i, j) in field.wild_generator_indices() if i < max_conductor
    ]
    choices: list[tuple[tuple[int, int], list[Root]]] = []
    for (i, j) in sub_indices:
        e = 0
        while i * field.p**e < max_conductor:
            e += 1
        order = field.p**e
        choices.append(
            ((i, j), [root_normalize(order, k) for k in range(order)])
        )
    teich_orders = field.q - 1
    out = []

    def rec(k: int, wild: dict):
        if k == len(choices):
            for t in range(teich_orders):
                teich = root_normalize(teich_orders, t) if teich_orders > 1 else ROOT_ONE
                cond = _conductor_from_images(field, teich, wild)
                if cond <= max_conductor:
                    for pv in pi_values:
                        out.append(MultChar(field, cond, pv, teich, dict(wild)))
                if teich_orders == 1:
                    break
            return
        ij, opts = choices[k]
        for r in opts:
            if r == ROOT_ONE:
                rec(k + 1, wild)
            else:
                wild[ij] = r
                rec(k + 1, wild)
                del wild[ij]

    rec(0, {})
    return out
