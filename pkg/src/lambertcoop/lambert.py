"""Real branches of the Lambert W function.

W(z) solves ``w * exp(w) = z``. For real -1/e <= z < 0 there are two real
solutions: the principal branch W_0 (w >= -1) and the lower branch W_{-1}
(w <= -1). They meet at the branch point z = -1/e, w = -1.

Evaluation starts from a regime-dependent initial guess and refines it with
Halley's method. A result is only returned once the defining residual
``|w * exp(w) - z|`` is below ``rel_tolerance * max(|z|, abs_floor)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bounds import barry_approx, g
from .errors import ConvergenceError, DomainError

__all__ = [
    "BRANCH_POINT",
    "Branch",
    "EvalOptions",
    "WEvaluation",
    "branch_point_series",
    "branch_point_distance",
    "lambert_w",
    "log_identity_gap",
    "residual",
    "wm1",
    "wm1_exp",
    "w0",
]

# -1/e split into a double and its rounding remainder
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17
BRANCH_POINT = -_INV_E_HI

# inputs this close below -1/e are treated as rounding noise
_CLAMP = 4.0 * math.ulp(_INV_E_HI)
# e*z + 1 below which the series, not Barry's formula, seeds W_{-1}
_SERIES_SEED_WINDOW = 0.25


class Branch(enum.Enum):
    PRINCIPAL = 0
    MINUS_ONE = -1

    @classmethod
    def parse(cls, value) -> "Branch":
        """Accept a Branch, its index (0 / -1) or a name such as ``"m1"``."""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        if key in ("0", "p", "principal", "w0"):
            return cls.PRINCIPAL
        if key in ("-1", "m1", "minus-one", "minusone", "wm1"):
            return cls.MINUS_ONE
        raise ValueError(f"unknown branch {value!r}")

    def contains(self, w: float) -> bool:
        """Whether ``w`` lies in this branch's range."""
        return w >= -1.0 if self is Branch.PRINCIPAL else w <= -1.0


@dataclass(frozen=True)
class EvalOptions:
    rel_tolerance: float = 1e-12
    abs_floor: float = 1e-300
    max_iterations: int = 64
    branch_point_window: float = 1e-6

    def __post_init__(self):
        for name in ("rel_tolerance", "abs_floor", "branch_point_window"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an integer >= 1, got {self.max_iterations!r}")

    def residual_bound(self, z: float) -> float:
        return self.rel_tolerance * max(abs(z), self.abs_floor)


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class WEvaluation:
    """One certified evaluation of W on a given branch."""

    value: float
    residual: float
    iterations: int
    z: float
    branch: Branch = Branch.PRINCIPAL

    def __float__(self) -> float:
        return self.value


def residual(w: float, z: float) -> float:
    """Defining-equation residual ``|w * exp(w) - z|``."""
    return abs(w * math.exp(w) - z)


def log_identity_gap(w: float, z: float) -> float:
    """``|w - (ln|z| - ln|w|)|``, zero when w = W(z) and w, z share a sign."""
    if w == 0.0 or z == 0.0 or (w > 0.0) != (z > 0.0):
        raise DomainError(f"log identity needs nonzero w, z of equal sign, got w={w!r}, z={z!r}")
    return abs(w - (math.log(abs(z)) - math.log(abs(w))))


def branch_point_distance(z: float) -> float:
    """``e*z + 1`` computed without cancellation near z = -1/e."""
    return math.e * ((z + _INV_E_HI) + _INV_E_LO)


def _check_domain(z: float, branch: Branch) -> float:
    """Validate z for ``branch`` and return it, clamped onto -1/e if needed."""
    if math.isnan(z):
        raise DomainError("W is undefined for NaN")
    if z < BRANCH_POINT:
        if z >= BRANCH_POINT - _CLAMP:
            return BRANCH_POINT
        raise DomainError(f"z = {z!r} lies below the branch point -1/e")
    if branch is Branch.MINUS_ONE and not z < 0.0:
        raise DomainError(f"W_-1 is only real on -1/e <= z < 0, got z = {z!r}")
    if math.isinf(z):
        raise DomainError("W is not evaluated at infinity")
    return z


def branch_point_series(z: float, branch: Branch | str | int = Branch.PRINCIPAL) -> float:
    """Third-order expansion of W about the branch point.

    ``-1 + p - p**2/3 + 11*p**3/72`` with ``p = +-sqrt(2*(e*z + 1))``, the sign
    positive on the principal branch and negative on W_{-1}.
    """
    branch = Branch.parse(branch)
    d = branch_point_distance(z)
    if d < 0.0:
        if z >= BRANCH_POINT - _CLAMP:
            d = 0.0
        else:
            raise DomainError(f"branch-point series needs e*z + 1 >= 0, got z = {z!r}")
    p = math.sqrt(2.0 * d)
    if branch is Branch.MINUS_ONE:
        p = -p
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))


def _initial_guess(z: float, branch: Branch, d: float) -> float:
    if d < _SERIES_SEED_WINDOW:
        return branch_point_series(z, branch)
    if branch is Branch.MINUS_ONE:
        return barry_approx(z)
    if z > math.e:
        lz = math.log(z)
        return lz - math.log(lz)
    return math.log1p(z)


def _halley(z: float, w: float, options: EvalOptions, branch: Branch) -> WEvaluation:
    bound = options.residual_bound(z)
    prev_step = math.inf
    for it in range(1, options.max_iterations + 1):
        # t = (w*e^w - z) * e^{-w}; halving the exponent avoids overflow for tiny |z|
        h = math.exp(-0.5 * w)
        t = w - (z * h) * h
        w1 = w + 1.0
        if w1 == 0.0:
            break
        denom = w1 - 0.5 * (w + 2.0) * t / w1
        step = t / denom
        w_new = w - step
        # never let a step leave the branch
        if branch is Branch.MINUS_ONE and w_new > -1.0:
            w_new = 0.5 * (w - 1.0)
        elif branch is Branch.PRINCIPAL and w_new < -1.0:
            w_new = 0.5 * (w - 1.0)
        step = abs(w_new - w)
        w = w_new
        r = residual(w, z)
        if r <= bound and (step <= 4.0 * math.ulp(1.0 + abs(w)) or step >= 0.5 * prev_step):
            return WEvaluation(w, r, it, z, branch)
        if step == 0.0:
            break
        prev_step = step
    r = residual(w, z)
    if r <= bound:
        return WEvaluation(w, r, options.max_iterations, z, branch)
    raise ConvergenceError(
        f"W{branch.value}({z!r}) did not reach residual {bound:.3g} "
        f"after {options.max_iterations} iterations (residual {r:.3g})",
        last_value=w,
        residual=r,
        iterations=options.max_iterations,
    )


def lambert_w(
    z: float,
    branch: Branch | str | int = Branch.PRINCIPAL,
    options: EvalOptions | None = None,
) -> WEvaluation:
    """Evaluate W on a real branch and certify the result by its residual.

    Parameters
    ----------
    z : float
        Argument, ``z >= -1/e``; additionally ``z < 0`` on ``Branch.MINUS_ONE``.
        Values up to four ulps below -1/e are clamped onto the branch point.
    branch : Branch, str or int
        ``Branch.PRINCIPAL`` (also ``0``) or ``Branch.MINUS_ONE`` (``-1``, ``"m1"``).
    options : EvalOptions, optional
        Tolerances and iteration limit.

    Returns
    -------
    WEvaluation
        Value, residual ``|w e^w - z|``, Halley iteration count and the input.

    Raises
    ------
    DomainError
        If z is outside the branch's real domain.
    ConvergenceError
        If the residual bound is not met within ``max_iterations``.
    """
    branch = Branch.parse(branch)
    options = DEFAULT_OPTIONS if options is None else options
    z = _check_domain(float(z), branch)

    if z == BRANCH_POINT:
        return WEvaluation(-1.0, residual(-1.0, z), 0, z, branch)
    if z == 0.0:
        return WEvaluation(0.0, 0.0, 0, z, branch)

    d = branch_point_distance(z)
    if d < options.branch_point_window:
        w = branch_point_series(z, branch)
        r = residual(w, z)
        if r <= options.residual_bound(z):
            return WEvaluation(w, r, 0, z, branch)

    return _halley(z, _initial_guess(z, branch, d), options, branch)


def w0(z: float) -> float:
    """Principal-branch value W_0(z) with default options."""
    return lambert_w(z, Branch.PRINCIPAL).value


def wm1(z: float) -> float:
    """Lower-branch value W_{-1}(z) with default options."""
    return lambert_w(z, Branch.MINUS_ONE).value


def wm1_exp(u: float, options: EvalOptions | None = None) -> float:
    """W_{-1}(-exp(-u - 1)) for u >= 0, computed without forming the argument.

    With x = -W - 1 > 0 the defining equation becomes ``x - ln(1 + x) = u``,
    which stays well scaled where ``-exp(-u - 1)`` would underflow (u > ~744)
    or lose digits to rounding next to -1/e. That equation is solved by
    Halley's method, and the result is certified by
    ``|x - ln(1 + x) - u| <= rel_tolerance * max(u, abs_floor)``.
    """
    options = DEFAULT_OPTIONS if options is None else options
    if not u >= 0.0 or math.isinf(u):
        raise DomainError(f"wm1_exp requires finite u >= 0, got {u!r}")
    if u == 0.0:
        return -1.0
    bound = options.rel_tolerance * max(u, options.abs_floor)
    # between the closed-form bounds sqrt(2u) + 2u/3 < x < sqrt(2u) + u
    x = math.sqrt(2.0 * u) + 0.8 * u
    for _ in range(options.max_iterations):
        f = g(x) - u
        if abs(f) <= bound:
            return -1.0 - x
        d1 = x / (1.0 + x)
        d2 = (1.0 / (1.0 + x)) ** 2
        step = f / (d1 - 0.5 * f * d2 / d1)
        x_new = x - step
        if not x_new > 0.0:
            x_new = 0.5 * x
        if x_new == x:
            break
        x = x_new
    r = abs(g(x) - u)
    if r <= bound:
        return -1.0 - x
    raise ConvergenceError(
        f"W-1(-exp(-{u!r}-1)) did not converge (log-domain residual {r:.3g})",
        last_value=-1.0 - x,
        residual=r,
        iterations=options.max_iterations,
    )
