"""Closed-form inequalities around the lower real branch W_{-1}.

Everything here is an explicit formula: two bounds on ln(1 + x), the
function g(x) = x - ln(1 + x) with its three-way sandwich, the linear-plus-root
family F(u, c) bracketing W_{-1}(-exp(-u - 1)), and a closed-form
approximation of W_{-1} due to Barry et al. (alpha = 0.3205).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "BARRY_ALPHA",
    "C_LOWER",
    "C_LOWER_UNIT",
    "C_UPPER",
    "BoundCoefficient",
    "F",
    "barry_approx",
    "g",
    "lemma2_sandwich",
    "log_lower_bound",
    "log_upper_bound",
    "wm1_bounds",
]

BARRY_ALPHA = 0.3205

#: F(u, c) is an upper bound on W_{-1}(-exp(-u-1)) for every c <= C_UPPER.
C_UPPER = 2.0 / 3.0
#: F(u, c) is a lower bound for every c >= C_LOWER, on all of u > 0.
C_LOWER = 1.0
#: Tighter lower-bound coefficient, valid on 0 < u < 1 only.
C_LOWER_UNIT = 0.75

_NEG_INV_E = -1.0 / math.e


@dataclass(frozen=True)
class BoundCoefficient:
    """The coefficient c of F(u, c) = -1 - sqrt(2u) - c*u."""

    c: float

    @property
    def is_upper(self) -> bool:
        """True when F(., c) bounds W_{-1}(-exp(-u-1)) from above for all u > 0."""
        return self.c <= C_UPPER

    @property
    def is_lower(self) -> bool:
        """True when F(., c) bounds W_{-1}(-exp(-u-1)) from below for all u > 0."""
        return self.c >= C_LOWER

    def __call__(self, u: float) -> float:
        return F(u, self.c)


def log_upper_bound(x: float) -> float:
    """Rational upper bound x - (x^2/2) / (1 + x/3)^2 on ln(1 + x), x >= 0.

    Equality holds only at x = 0.
    """
    if not x >= 0.0:
        raise DomainError(f"log_upper_bound requires x >= 0, got {x!r}")
    r = 1.0 / (1.0 + x / 3.0)
    return x - 0.5 * x * x * r * r


def log_lower_bound(x: float) -> float:
    """Second-order Taylor lower bound x - x^2/2 on ln(1 + x), x >= 0."""
    if not x >= 0.0:
        raise DomainError(f"log_lower_bound requires x >= 0, got {x!r}")
    return x - 0.5 * x * x


def _log1p_tail(x: float) -> float:
    """ln(1 + x) - x + x^2/2, without cancellation for small |x|."""
    if abs(x) < 0.5:
        # alternating series from the cubic term, truncated below double precision
        acc = 0.0
        for k in range(60, 2, -1):
            acc = x * acc + (1.0 if k % 2 else -1.0) / k
        return acc * x * x * x
    return math.log1p(x) - x + 0.5 * x * x


def g(x: float) -> float:
    """x - ln(1 + x), nonnegative on x > -1 with its only zero at x = 0."""
    if not x > -1.0:
        raise DomainError(f"g requires x > -1, got {x!r}")
    if abs(x) < 0.05:
        return 0.5 * x * x - _log1p_tail(x)
    return x - math.log1p(x)


def lemma2_sandwich(x: float) -> tuple[float, float, float]:
    """Return ``((2/3) g(x), x - sqrt(2 g(x)), g(x))``, strictly increasing for x > 0."""
    if not x > 0.0:
        raise DomainError(f"lemma2_sandwich requires x > 0, got {x!r}")
    gx = g(x)
    root = math.sqrt(2.0 * gx)
    # x - sqrt(2g) = (x^2 - 2g) / (x + sqrt(2g)) and x^2 - 2g = 2 * tail
    middle = 2.0 * _log1p_tail(x) / (x + root) if x < 1.0 else x - root
    return (2.0 / 3.0) * gx, middle, gx


def F(u: float, c: float) -> float:
    """Bound family -1 - sqrt(2u) - c*u on W_{-1}(-exp(-u-1))."""
    if not u >= 0.0:
        raise DomainError(f"F requires u >= 0, got {u!r}")
    return -1.0 - math.sqrt(2.0 * u) - c * u


def wm1_bounds(u: float) -> tuple[float, float]:
    """Bracket W_{-1}(-exp(-u-1)) for u > 0.

    Returns ``(lower, upper)`` with ``lower < W_{-1}(-exp(-u-1)) < upper``.
    The upper end is always F(u, 2/3). The lower end is F(u, 3/4) when
    u < 1 and F(u, 1) otherwise.
    """
    if not u > 0.0:
        raise DomainError(f"wm1_bounds requires u > 0, got {u!r}")
    c_low = C_LOWER_UNIT if u < 1.0 else C_LOWER
    return F(u, c_low), F(u, C_UPPER)


def barry_approx(z: float) -> float:
    """Closed-form approximation of W_{-1}(z) on -1/e <= z < 0.

    ln(-z) - (2/alpha) * (1 - 1 / (1 + alpha * sqrt(-(1 + ln(-z)) / 2)))
    with alpha = 0.3205. Exact at the branch point; elsewhere on the branch
    the relative error is a few tenths of a percent.
    """
    if not (z < 0.0):
        raise DomainError(f"barry_approx requires z < 0, got {z!r}")
    lnz = math.log(-z)
    if 1.0 + lnz > 0.0:
        if z < _NEG_INV_E * (1.0 + 4.0 * 2.0**-52):
            raise DomainError(f"barry_approx requires z >= -1/e, got {z!r}")
        # z within rounding of -1/e
        lnz = -1.0
    s = math.sqrt(-0.5 * (1.0 + lnz))
    return lnz - (2.0 / BARRY_ALPHA) * (1.0 - 1.0 / (1.0 + BARRY_ALPHA * s))
