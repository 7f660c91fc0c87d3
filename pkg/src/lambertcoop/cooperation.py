"""Outage analysis of two-user decode-and-forward cooperation.

Both users see independent Rayleigh-faded uplinks with average SNR
``gamma_bar``. Transmitting alone with an SNR threshold ``theta``, the outage
probability is ``1 - exp(-theta/gamma_bar)``. Cooperating, each user spends
half its power on its own data and half relaying its partner's. The access
point combines the two replicas with MRC, and the cooperative scheme needs
threshold ``theta_prime >= theta``.

Cooperation helps iff ``theta_prime`` is below an exact limit written with
W_{-1}. Two closed-form limits bracket that one: below the safe threshold
cooperation certainly helps, and above the avoid threshold it certainly hurts.

Functions take linear SNRs. Use :func:`db_to_linear` or
:meth:`LinkBudget.from_db` for dB inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .lambert import wm1_exp

__all__ = [
    "CooperationAssessment",
    "LinkBudget",
    "Verdict",
    "assess",
    "avoid_threshold",
    "db_to_linear",
    "exact_threshold",
    "linear_to_db",
    "min_gamma",
    "outage_coop",
    "outage_noncoop",
    "safe_threshold",
]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0.0:
        raise DomainError(f"only positive power ratios have a dB value, got {x!r}")
    return 10.0 * math.log10(x)


def _check_snr(name: str, value: float, strict: bool = True) -> None:
    ok = value > 0.0 if strict else value >= 0.0
    if not ok or math.isnan(value):
        rel = ">" if strict else ">="
        raise DomainError(f"{name} must be {rel} 0, got {value!r}")


def outage_noncoop(theta: float, gamma_bar: float) -> float:
    """P_nc = 1 - exp(-theta / gamma_bar)."""
    _check_snr("theta", theta, strict=False)
    _check_snr("gamma_bar", gamma_bar)
    return -math.expm1(-theta / gamma_bar)


def outage_coop(theta_prime: float, gamma_bar: float) -> float:
    """P_c = 1 - (1 + x) exp(-x) with x = theta_prime / (gamma_bar / 2)."""
    _check_snr("theta_prime", theta_prime, strict=False)
    _check_snr("gamma_bar", gamma_bar)
    x = theta_prime / (0.5 * gamma_bar)
    if x < 1e-3:
        # 1 - (1+x)e^{-x} = x^2/2 - x^3/3 + x^4/8 - ...
        return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.125 - x / 30.0)))
    return -math.expm1(-x) - x * math.exp(-x)


def exact_threshold(theta: float, gamma_bar: float) -> float:
    """Largest theta_prime (exclusive) for which P_c < P_nc.

    ``-(gamma_bar/2) * (W_{-1}(-exp(-1 - theta/gamma_bar)) + 1)``
    """
    _check_snr("theta", theta)
    _check_snr("gamma_bar", gamma_bar)
    # W_{-1}(-exp(-1 - u)) evaluated from u directly, so small u keeps its digits
    w = wm1_exp(theta / gamma_bar)
    return -0.5 * gamma_bar * (w + 1.0)


def safe_threshold(theta: float, gamma_bar: float) -> float:
    """``sqrt(gamma_bar*theta/2) + theta/3``; any theta_prime up to it is beneficial."""
    _check_snr("theta", theta)
    _check_snr("gamma_bar", gamma_bar)
    return math.sqrt(0.5 * gamma_bar * theta) + theta / 3.0


def avoid_threshold(theta: float, gamma_bar: float) -> float:
    """``sqrt(gamma_bar*theta/2) + 3*theta/8``; any theta_prime from it on is harmful.

    Only certified for theta < gamma_bar.
    """
    _check_snr("theta", theta)
    _check_snr("gamma_bar", gamma_bar)
    if theta >= gamma_bar:
        raise DomainError(
            f"avoid threshold requires theta < gamma_bar, got theta/gamma_bar = {theta / gamma_bar!r}"
        )
    return math.sqrt(0.5 * gamma_bar * theta) + 0.375 * theta


def min_gamma(theta: float, theta_prime: float) -> float:
    """Smallest gamma_bar at which theta_prime meets the safe threshold.

    ``2 * (theta_prime/sqrt(theta) - sqrt(theta)/3)**2``
    """
    _check_snr("theta", theta)
    if not theta_prime >= theta:
        raise DomainError(f"theta_prime must be >= theta, got {theta_prime!r} < {theta!r}")
    s = math.sqrt(theta)
    return 2.0 * (theta_prime / s - s / 3.0) ** 2


@dataclass(frozen=True)
class LinkBudget:
    """SNR thresholds and average uplink SNR, all linear."""

    theta: float
    theta_prime: float
    gamma_bar: float

    def __post_init__(self):
        _check_snr("theta", self.theta)
        _check_snr("theta_prime", self.theta_prime)
        _check_snr("gamma_bar", self.gamma_bar)
        if not self.theta_prime >= self.theta:
            raise DomainError(
                f"theta_prime must be >= theta, got {self.theta_prime!r} < {self.theta!r}"
            )

    @classmethod
    def from_db(cls, theta_db: float, theta_prime_db: float, gamma_db: float) -> "LinkBudget":
        return cls(db_to_linear(theta_db), db_to_linear(theta_prime_db), db_to_linear(gamma_db))

    @property
    def u(self) -> float:
        return self.theta / self.gamma_bar

    @property
    def theta_db(self) -> float:
        return linear_to_db(self.theta)

    @property
    def theta_prime_db(self) -> float:
        return linear_to_db(self.theta_prime)

    @property
    def gamma_db(self) -> float:
        return linear_to_db(self.gamma_bar)


class Verdict(enum.Enum):
    CERTAINLY_BENEFICIAL = "certainly-beneficial"
    CERTAINLY_HARMFUL = "certainly-harmful"
    EXACT_BENEFICIAL = "exact-beneficial"
    EXACT_HARMFUL = "exact-harmful"

    @property
    def beneficial(self) -> bool:
        return self in (Verdict.CERTAINLY_BENEFICIAL, Verdict.EXACT_BENEFICIAL)


@dataclass(frozen=True)
class CooperationAssessment:
    verdict: Verdict
    exact_threshold: float
    safe_threshold: float
    avoid_threshold: float
    p_nc: float
    p_c: float
    budget: LinkBudget
    # False when theta >= gamma_bar: the avoid threshold is not certified
    # there and is reported as NaN
    bounds_certified: bool = True

    @property
    def beneficial(self) -> bool:
        return self.verdict.beneficial


def assess(budget: LinkBudget) -> CooperationAssessment:
    """Classify a link budget, using the closed-form thresholds where they decide.

    theta_prime at or below the safe threshold is certainly beneficial; at or
    above the avoid threshold it is certainly harmful. In between, the W_{-1}
    threshold decides, with equality counted as harmful.
    """
    theta, tp, gb = budget.theta, budget.theta_prime, budget.gamma_bar
    exact = exact_threshold(theta, gb)
    safe = safe_threshold(theta, gb)
    certified = theta < gb
    avoid = avoid_threshold(theta, gb) if certified else math.nan

    if tp <= safe:
        verdict = Verdict.CERTAINLY_BENEFICIAL
    elif certified and tp >= avoid:
        verdict = Verdict.CERTAINLY_HARMFUL
    elif tp < exact:
        verdict = Verdict.EXACT_BENEFICIAL
    else:
        verdict = Verdict.EXACT_HARMFUL

    return CooperationAssessment(
        verdict=verdict,
        exact_threshold=exact,
        safe_threshold=safe,
        avoid_threshold=avoid,
        p_nc=outage_noncoop(theta, gb),
        p_c=outage_coop(tp, gb),
        budget=budget,
        bounds_certified=certified,
    )
