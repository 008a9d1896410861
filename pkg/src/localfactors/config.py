"""Global exponent-lattice configuration.

Formal powers of q are kept on the lattice (1/2d)Z for a session-wide integer
d >= 1.  Shifts s0 must lie on (1/d)Z and character twists on (1/2d)Z; the
default d = 2 supports the half-integer Langlands-quotient twists exercised by
the test grids.
"""

from fractions import Fraction

from .errors import PrecisionError

_LATTICE_D = 2


def lattice_d() -> int:
    return _LATTICE_D


def set_lattice_d(d: int) -> None:
    global _LATTICE_D
    if d < 1:
        raise ValueError("lattice parameter d must be >= 1")
    _LATTICE_D = d


def check_qexp(r: Fraction) -> Fraction:
    """Validate a formal q-exponent against the (1/2d)Z lattice."""
    if (2 * _LATTICE_D) % r.denominator != 0:
        raise PrecisionError(
            f"exact-arith: q-exponent {r} off the (1/{2 * _LATTICE_D})Z lattice"
        )
    return r


def check_shift(s0: Fraction) -> Fraction:
    """Validate a substitution shift against the (1/d)Z lattice."""
    if _LATTICE_D % s0.denominator != 0:
        raise PrecisionError(
            f"exact-arith: shift {s0} off the (1/{_LATTICE_D})Z lattice"
        )
    return s0
