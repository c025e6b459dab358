"""Decay functionals bounding the positive-definite spherical functions.

Three universal pointwise bounds of the form P(H) * exp(-theta(H)) are
available on SL(n+1,R); only the linear part theta matters for the
exponents computed here (the polynomial prefactor P moves log powers
around and is never represented).
"""

import enum
from fractions import Fraction

from . import cartan


class BoundKind(enum.Enum):
    HARISH_CHANDRA = "hc"  # theta = rho / n
    HOWE_TAN = "ht"  # theta = beta / 2
    OH = "oh"  # theta = gamma, parity-split formula

    @classmethod
    def from_string(cls, s: str) -> "BoundKind":
        for kind in cls:
            if s.lower() in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown bound kind {s!r} (expected hc, ht or oh)")


class InadmissibleBoundError(ValueError):
    """The residual rate 2*rho - theta is not positive on the chamber."""


def oh_gamma(n: int) -> cartan.Functional:
    """Oh's functional gamma in simple-root coordinates.

    Odd n:  gamma_i = i/2 for i <= (n-1)/2 and (n+1-i)/2 for i >= (n+1)/2.
    Even n: gamma_i = i/2 for i <= n/2, n/4 at i = n/2+1, (n+1-i)/2 above.
    """
    if n < 2:
        raise ValueError("the strongly-orthogonal-system bound needs rank n >= 2")
    coords = []
    if n % 2 == 1:
        for i in range(1, n + 1):
            coords.append(Fraction(i, 2) if i <= (n - 1) // 2 else Fraction(n + 1 - i, 2))
    else:
        for i in range(1, n + 1):
            if i <= n // 2:
                coords.append(Fraction(i, 2))
            elif i == n // 2 + 1:
                coords.append(Fraction(n, 4))
            else:
                coords.append(Fraction(n + 1 - i, 2))
    return tuple(coords)


def decay_rate(kind: BoundKind, n: int) -> cartan.Functional:
    """The linear functional theta for one of the three universal bounds."""
    cartan.check_rank(n)
    if kind is BoundKind.HARISH_CHANDRA:
        # integrability constant n_G = n for SL(n+1,R)
        return cartan.scale(cartan.two_rho(n), Fraction(1, 2 * n))
    if kind is BoundKind.HOWE_TAN:
        return cartan.scale(cartan.highest_root(n), Fraction(1, 2))
    if kind is BoundKind.OH:
        return oh_gamma(n)
    raise ValueError(f"unknown bound kind {kind!r}")


def residual_rate(theta: cartan.Functional, n: int) -> cartan.Functional:
    """psi = 2*rho - theta, the growth rate left after damping by theta.

    Raises InadmissibleBoundError unless psi is positive on every dual
    basis vector (otherwise the damped ball integrals stop growing and
    the exponent formulas below do not apply).
    """
    psi = cartan.sub(cartan.two_rho(n), theta)
    for j, v in enumerate(psi, start=1):
        if v <= 0:
            raise InadmissibleBoundError(
                f"2*rho - theta is not positive at dual index {j}: {v}"
            )
    return psi
