"""Request/response schemas and codecs between the wire format and core
objects.

Field: {p, f, level}.  Multiplicative character: conductor, pi-value as a
root of unity times a formal q-power, and unit images aligned with the
field's generator list (Teichmueller generator first, then the wild
generators (i, j) in ascending order).  Additive character: conductor plus
the scale-unit coefficient codes.  All round trips are bit-exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from ..characters import AddChar, MultChar, root_normalize
from ..errors import UsageError
from ..localfield import TruncatedField, make_field
from ..lsfactors import LanglandsQuotientParam, PrincipalSeriesParam
from ..scalar import Scalar


class FieldSpec(BaseModel):
    p: int = Field(ge=2)
    f: int = Field(default=1, ge=1)
    level: int = Field(ge=1)

    def build(self) -> TruncatedField:
        return make_field(self.p, self.f, self.level)


class RootSpec(BaseModel):
    zeta_order: int = Field(default=1, ge=1)
    zeta_power: int = 0

    def build(self) -> tuple[int, int]:
        return root_normalize(self.zeta_order, self.zeta_power)

    @staticmethod
    def of(root: tuple[int, int]) -> "RootSpec":
        return RootSpec(zeta_order=root[0], zeta_power=root[1])


class PiValueSpec(RootSpec):
    q_exp_num: int = 0
    q_exp_den: int = Field(default=1, ge=1)

    def build_scalar(self) -> Scalar:
        return Scalar.zeta(self.zeta_order, self.zeta_power) * Scalar.qpow(
            Fraction(self.q_exp_num, self.q_exp_den)
        )


class MultCharSpec(BaseModel):
    conductor: int = Field(ge=0)
    pi_value: PiValueSpec = PiValueSpec()
    unit_images: list[RootSpec] = []

    def build(self, field: TruncatedField) -> MultChar:
        gens = field.wild_generator_indices()
        if self.unit_images and len(self.unit_images) != 1 + len(gens):
            raise UsageError(
                f"cli: expected {1 + len(gens)} unit images "
                f"(Teichmueller then {len(gens)} wild generators)"
            )
        teich = self.unit_images[0].build() if self.unit_images else (1, 0)
        wild = {}
        for ij, spec in zip(gens, self.unit_images[1:]):
            root = spec.build()
            if root != (1, 0):
                wild[ij] = root
        return MultChar(field, self.conductor, self.pi_value.build_scalar(), teich, wild)

    @staticmethod
    def of(chi: MultChar) -> "MultCharSpec":
        rou = chi.pi_value.cyclo.as_root_of_unity()
        pi = PiValueSpec(
            zeta_order=rou[0], zeta_power=rou[1],
            q_exp_num=chi.pi_value.qexp.numerator,
            q_exp_den=chi.pi_value.qexp.denominator,
        )
        images = [RootSpec.of(chi.teich_image)] + [
            RootSpec.of(chi.wild_images.get(ij, (1, 0)))
            for ij in chi.field.wild_generator_indices()
        ]
        return MultCharSpec(conductor=chi.conductor, pi_value=pi, unit_images=images)


class AddCharSpec(BaseModel):
    conductor: int = 0
    scale_unit: Optional[list[int]] = None

    def build(self, field: TruncatedField) -> AddChar:
        scale = field.from_codes(self.scale_unit) if self.scale_unit else None
        return AddChar(field, self.conductor, scale)

    @staticmethod
    def of(psi: AddChar) -> "AddCharSpec":
        return AddCharSpec(
            conductor=psi.conductor, scale_unit=psi.field.to_codes(psi.scale_unit)
        )


class PrincipalSeriesSpec(BaseModel):
    type: Literal["principal_series"] = "principal_series"
    characters: list[str]


class QuotientBlockSpec(BaseModel):
    characters: list[str]
    twist: str = "0"  # exact fraction, e.g. "1/2"

    def twist_fraction(self) -> Fraction:
        return Fraction(self.twist)


class LanglandsQuotientSpec(BaseModel):
    type: Literal["langlands_quotient"] = "langlands_quotient"
    blocks: list[QuotientBlockSpec]


ParamSpec = Union[PrincipalSeriesSpec, LanglandsQuotientSpec]


class CharacterTable(BaseModel):
    """Named character pool referenced by parameter specs."""

    field: FieldSpec
    characters: dict[str, MultCharSpec] = {}
    psi: AddCharSpec = AddCharSpec()

    def build(self):
        field = self.field.build()
        chars = {name: spec.build(field) for name, spec in self.characters.items()}
        return field, chars, self.psi.build(field)

    def lookup(self, chars: dict, name: str) -> MultChar:
        if name not in chars:
            raise UsageError(f"cli: unknown character name {name!r}")
        return chars[name]

    def build_param(self, chars: dict, spec: ParamSpec):
        if isinstance(spec, PrincipalSeriesSpec):
            return PrincipalSeriesParam([self.lookup(chars, n) for n in spec.characters])
        blocks = [
            (
                PrincipalSeriesParam([self.lookup(chars, n) for n in b.characters]),
                b.twist_fraction(),
            )
            for b in spec.blocks
        ]
        return LanglandsQuotientParam(blocks)


# -- command documents ---------------------------------------------------------


class TateDocument(CharacterTable):
    chi: str
    eval: Optional[str] = None


class TwistedDocument(CharacterTable):
    param: ParamSpec = Field(discriminator="type")
    r0: Literal["sym2", "wedge2"]
    eta: str
    eval: Optional[str] = None


class RankinSelbergDocument(CharacterTable):
    p1: list[str]
    p2: list[str]
    eval: Optional[str] = None


class ArtinDocument(CharacterTable):
    sigma: list[str]
    r0: Optional[Literal["sym2", "wedge2"]] = None
    eta: Optional[str] = None
    eval: Optional[str] = None


class PlancherelDocument(CharacterTable):
    param: ParamSpec = Field(discriminator="type")
    r0: Literal["sym2", "wedge2"]
    eta: str
    partitions: Optional[list[list[int]]] = None
    eval: Optional[str] = None


class RootDatumDocument(BaseModel):
    n: int = Field(ge=1)
    parity: Literal["odd", "even"]
    partitions: Optional[list[list[int]]] = None


class TransferDocument(BaseModel):
    field_a: FieldSpec
    field_b: FieldSpec
    level: int = Field(ge=1)
    characters: dict[str, MultCharSpec] = {}
    psi: AddCharSpec = AddCharSpec()
    sigma: list[str]
    eta: str
    r0: Literal["sym2", "wedge2"]


class StabilityDocument(CharacterTable):
    p1: list[str]
    p2: list[str]
    eta: str
    r0: Literal["sym2", "wedge2"]
    scan_threshold: bool = False


class SelftestDocument(BaseModel):
    criteria: Optional[list[int]] = None


DOCUMENT_TYPES = {
    "factor.tate": TateDocument,
    "factor.twisted": TwistedDocument,
    "factor.rs": RankinSelbergDocument,
    "factor.artin": ArtinDocument,
    "plancherel": PlancherelDocument,
    "rootdatum": RootDatumDocument,
    "transfer-check": TransferDocument,
    "stability-demo": StabilityDocument,
    "selftest": SelftestDocument,
}
