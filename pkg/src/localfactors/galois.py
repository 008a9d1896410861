"""The Galois side: monomial Weil parameters, the Sym^2/wedge^2 plethysm,
Artin factors as products of abelian factors, the LLC comparison, and the
close-field transfer of factor computations.

This is a deliberately separate code path from :mod:`localfactors.lsfactors`:
L-functions here come from products of abelian L's and epsilons from products
of abelian epsilons, while the analytic side reconstructs them from the zeros
of gamma and the functional equation.  Their exact agreement is the desk-scale
content of the LLC-compatibility theorem.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import AddChar, AssociationCertificate, MultChar
from .errors import ConsistencyError, UsageError
from .localfield import purity_check
from .lsfactors import (
    LanglandsQuotientParam, PrincipalSeriesParam, TwistedFactorRequest,
    square_pairs, twisted_eps_and_L, twisted_gamma,
)
from .ratfunc import FactoredRF
from .tate import no_cache, tate_L, tate_eps, tate_gamma


class WeilParam:
    """A Frobenius-semisimple parameter sigma = sum of characters of the Weil
    group (via class field theory), with trivial monodromy."""

    def __init__(self, chars):
        chars = list(chars)
        if chars:
            field = chars[0].field
            if any(c.field is not field for c in chars):
                raise UsageError("galois: characters on different fields")
            self.field = field
        else:
            self.field = None
        self.chars = chars

    @property
    def dim(self) -> int:
        return len(self.chars)

    def det(self) -> MultChar:
        if not self.chars:
            raise UsageError("galois: determinant of the zero-dimensional parameter")
        out = self.chars[0]
        for c in self.chars[1:]:
            out = out * c
        return out

    def dual(self) -> "WeilParam":
        return WeilParam([c.inverse() for c in self.chars])

    def __add__(self, other: "WeilParam") -> "WeilParam":
        return WeilParam(self.chars + other.chars)


def r0_compose(sigma: WeilParam, r0: str, eta: MultChar) -> WeilParam:
    """(r0 . sigma) tensor eta as a multiset of characters."""
    return WeilParam(square_pairs(sigma.chars, r0, eta))


@dataclass(frozen=True)
class ArtinTriple:
    L: FactoredRF
    eps: FactoredRF
    gamma: FactoredRF


def artin_factors(rho: WeilParam, psi: AddChar) -> ArtinTriple:
    """Additive Artin factors of a monomial parameter: plain products of the
    abelian triple over the summands."""
    L = FactoredRF.one()
    eps = FactoredRF.one()
    gamma = FactoredRF.one()
    for chi in rho.chars:
        L = L * tate_L(chi)
        eps = eps * tate_eps(chi, psi)
        gamma = gamma * tate_gamma(chi, psi)
    return ArtinTriple(L, eps, gamma)


def weil_from_analytic(param) -> WeilParam:
    """LLC for our inputs: character-by-character via class field theory."""
    if isinstance(param, LanglandsQuotientParam):
        return WeilParam(param.flatten().chars)
    if isinstance(param, PrincipalSeriesParam):
        return WeilParam(list(param.chars))
    raise UsageError("galois: unsupported parameter type")


@dataclass(frozen=True)
class LLCReport:
    gamma_analytic: FactoredRF
    gamma_galois: FactoredRF
    L_analytic: FactoredRF
    L_galois: FactoredRF
    eps_analytic: FactoredRF
    eps_galois: FactoredRF

    @property
    def all_equal(self) -> bool:
        return (
            self.gamma_analytic == self.gamma_galois
            and self.L_analytic == self.L_galois
            and self.eps_analytic == self.eps_galois
        )


def llc_match(req: TwistedFactorRequest) -> LLCReport:
    """Compute gamma, L, epsilon on both sides and assert exact equality."""
    gamma_an = twisted_gamma(req)
    eps_an, L_an = twisted_eps_and_L(req)
    sigma = weil_from_analytic(req.param)
    rho = r0_compose(sigma, req.r0, req.eta)
    triple = artin_factors(rho, req.psi)
    report = LLCReport(gamma_an, triple.gamma, L_an, triple.L, eps_an, triple.eps)
    if not report.all_equal:
        raise ConsistencyError(
            "galois: LLC mismatch\n"
            f"  gamma analytic: {report.gamma_analytic}\n"
            f"  gamma galois:   {report.gamma_galois}\n"
            f"  L analytic:     {report.L_analytic}\n"
            f"  L galois:       {report.L_galois}\n"
            f"  eps analytic:   {report.eps_analytic}\n"
            f"  eps galois:     {report.eps_galois}"
        )
    return report


@dataclass(frozen=True)
class TransferReport:
    triple_a: ArtinTriple
    triple_b: ArtinTriple
    level_read_a: int
    level_read_b: int

    @property
    def equal(self) -> bool:
        t, u = self.triple_a, self.triple_b
        return t.L == u.L and t.eps == u.eps and t.gamma == u.gamma


def deligne_transfer(
    cert: AssociationCertificate,
    sigma: WeilParam,
    r0: str,
    eta: MultChar,
    psi: AddChar,
) -> TransferReport:
    """Recompute the twisted Artin factors on both sides of an association
    certificate; the canonical forms must be bit-identical and both
    computations must stay below the certified level."""
    for chi in list(sigma.chars) + [eta]:
        if chi.depth >= cert.level - 1:
            raise UsageError("galois: parameter depth exceeds the certificate level")
    rho_a = r0_compose(sigma, r0, eta)
    sigma_b = WeilParam([cert.transported_mult(c) for c in sigma.chars])
    rho_b = r0_compose(sigma_b, r0, cert.transported_mult(eta))
    psi_b = cert.transported_add(psi)

    with no_cache():
        triple_a, level_a = purity_check(lambda: artin_factors(rho_a, psi))
        triple_b, level_b = purity_check(lambda: artin_factors(rho_b, psi_b))
    report = TransferReport(triple_a, triple_b, level_a, level_b)
    if not report.equal:
        raise ConsistencyError("galois: transfer produced different factors")
    if level_a >= cert.level or level_b >= cert.level:
        raise ConsistencyError(
            f"galois: computation read level {max(level_a, level_b)} "
            f">= certified level {cert.level}"
        )
    return report
