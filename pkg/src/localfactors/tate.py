"""Abelian local factors: L(s, chi), epsilon(s, chi, psi) via Gauss sums, and
gamma(s, chi, psi) = eps * L(1-s, chi^(-1)) / L(s, chi).

Conventions.  The epsilon normalization is pinned by four exact requirements,
checked by the test suite rather than transcribed from references:
  (a) unramified chi with conductor-0 psi gives eps = 1;
  (b) the local functional equation gamma(s,chi,psi) gamma(1-s,chi^(-1),
      conj psi) = 1 holds exactly;
  (c) |eps(1/2)| = 1 for unitary chi;
  (d) the scaling law gamma(s,chi,psi^a) = chi(a) |a|^(s-1/2) gamma(s,chi,psi).
These force, with a = a(chi) and n = n(psi) (psi trivial on p^n):

    eps(s, chi, psi) = q^(-n/2) * S(chi, psi) * Z^(a - n),
    S(chi, psi) = sum over u in (O/p^a)^x of chi^(-1)(u w^(n-a)) psi(u w^(n-a)),

where for a = 0 the sum degenerates to the single term chi(w)^(-n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import cache
from .cache import no_cache

from .characters import AddChar, MultChar, root_mul
from .cyclotomic import Cyclo
from .errors import PrecisionError, UsageError
from .localfield import FieldElt
from .ratfunc import FactoredRF
from .scalar import Scalar

_CACHE: dict[tuple, object] = {}


def _cached(key, compute):
    if not cache.enabled():
        return compute()
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = compute()
    return hit


def tate_L(chi: MultChar) -> FactoredRF:
    """1/(1 - chi(w) Z) when unramified, else 1."""
    if chi.is_unramified():
        return FactoredRF.euler(chi.pi_value)
    return FactoredRF.one()


def gauss_sum(chi: MultChar, psi: AddChar, lift_rng=None) -> Scalar:
    """S(chi, psi) over the shell of valuation n(psi) - a(chi), a(chi) >= 1.

    Enumerates units of O/p^a as Teichmueller x (1+p) products in a fixed
    order; coefficients of the representatives above level a are irrelevant
    (and may be randomized via lift_rng to certify that)."""
    field = chi.field
    if chi.field is not psi.field:
        raise UsageError("tate: chi and psi on different fields")
    a = chi.conductor
    if a < 1:
        raise UsageError("tate: gauss_sum needs a ramified character")
    if a > field.level:
        raise PrecisionError("tate: field level too small for the conductor")
    if lift_rng is None:
        return _cached(("gauss", chi.key(), psi.key()), lambda: _gauss(chi, psi, None))
    return _gauss(chi, psi, lift_rng)


def _gauss(chi: MultChar, psi: AddChar, lift_rng) -> Scalar:
    field, a = chi.field, chi.conductor
    shell = psi.conductor - a
    counts: dict[tuple[int, int], int] = {}
    chi_inv = chi.inverse()
    for u in field.unit_reps(a, rng=lift_rng):
        x = FieldElt(field, shell, u)
        r = root_mul(chi_inv.unit_root(u), psi.value_root(x))
        counts[r] = counts.get(r, 0) + 1
    order = 1
    for (n, _k) in counts:
        order = order * n // gcd(order, n)
    total = Cyclo.from_zeta_counts(
        order, {k * (order // n): c for (n, k), c in counts.items()}
    )
    # chi^(-1) applied to the full shell element: pull out chi(w)^(-shell)
    return Scalar(total, 0, field.q) * chi.pi_value ** (-shell)


def tate_eps(chi: MultChar, psi: AddChar, lift_rng=None) -> FactoredRF:
    """Monomial epsilon factor q^(-n/2) S(chi,psi) Z^(a-n)."""
    def compute():
        a, n = chi.conductor, psi.conductor
        if a == 0:
            unit = (chi.pi_value ** (-n)) * Scalar.qpow(Fraction(-n, 2))
        else:
            unit = gauss_sum(chi, psi, lift_rng=lift_rng) * Scalar.qpow(Fraction(-n, 2))
        return FactoredRF.monomial(unit, a - n)

    if lift_rng is not None:
        return compute()
    return _cached(("eps", chi.key(), psi.key()), compute)


def tate_gamma(chi: MultChar, psi: AddChar, lift_rng=None) -> FactoredRF:
    """eps(s,chi,psi) * L(1-s, chi^(-1)) / L(s, chi), in canonical form."""
    def compute():
        eps = tate_eps(chi, psi, lift_rng=lift_rng)
        return eps * tate_L(chi.inverse()).reflect() / tate_L(chi)

    if lift_rng is not None:
        return compute()
    return _cached(("gamma", chi.key(), psi.key()), compute)


@dataclass(frozen=True)
class AbelianFactorTriple:
    L: FactoredRF
    eps: FactoredRF
    gamma: FactoredRF
    provenance: str  # "unramified-formula" or "gauss-sum"


def tate_triple(chi: MultChar, psi: AddChar) -> AbelianFactorTriple:
    L = tate_L(chi)
    eps = tate_eps(chi, psi)
    gamma = eps * tate_L(chi.inverse()).reflect() / L
    provenance = "unramified-formula" if chi.is_unramified() else "gauss-sum"
    assert gamma == eps * tate_L(chi.inverse()).reflect() / L
    return AbelianFactorTriple(L, eps, gamma, provenance)
