"""Exact twisted symmetric/exterior square local factors over finite-level
models of non-archimedean local fields, with a Galois-side oracle."""

__version__ = "0.1.0"

from .characters import AddChar, MultChar, associate, make_mult_char
from .galois import WeilParam, artin_factors, deligne_transfer, llc_match, r0_compose
from .localfield import FieldElt, TruncatedField, depth_and_bounds, make_field, purity_check
from .lsfactors import (
    LanglandsQuotientParam, PrincipalSeriesParam, TwistedFactorRequest,
    plancherel, plancherel_decomposition, psi_dependence, rs_gamma, spherical_L,
    stability_check, tempered_L, twisted_eps_and_L, twisted_gamma,
)
from .ratfunc import FactoredRF, format_rf, parse_rf
from .rootdata import build_root_datum, langlands_decomposition
from .scalar import Scalar
from .tate import gauss_sum, tate_eps, tate_gamma, tate_L, tate_triple

__all__ = [
    "AddChar", "FactoredRF", "FieldElt", "LanglandsQuotientParam", "MultChar",
    "PrincipalSeriesParam", "Scalar", "TruncatedField", "TwistedFactorRequest",
    "WeilParam", "artin_factors", "associate", "build_root_datum",
    "deligne_transfer", "depth_and_bounds", "format_rf", "gauss_sum",
    "langlands_decomposition", "llc_match", "make_field", "make_mult_char",
    "parse_rf", "plancherel", "plancherel_decomposition", "psi_dependence",
    "purity_check", "r0_compose", "rs_gamma", "spherical_L", "stability_check",
    "tate_L", "tate_eps", "tate_gamma", "tate_triple", "tempered_L",
    "twisted_eps_and_L", "twisted_gamma",
]
