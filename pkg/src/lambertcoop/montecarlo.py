"""Monte Carlo outage estimates for quasi-static Rayleigh fading.

Serves as an independent check of the closed-form outage probabilities.
Under Rayleigh fading the instantaneous SNR is exponential with mean equal to
the average SNR; samples are drawn by inverse CDF, ``-mean * ln(U)`` with
``U`` uniform on (0, 1].

Reproducibility: trials are cut into fixed-size chunks of ``CHUNK_SIZE``.
Chunk ``k`` draws from its own PCG64 stream seeded by
``SeedSequence(entropy=(seed, mode), spawn_key=(k,))``. The outage count is a
sum over chunks, so the result is bit-identical for a given seed no matter
how many worker threads process the chunks.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cooperation import exact_threshold, outage_coop, outage_noncoop
from .errors import DomainError

__all__ = [
    "CHUNK_SIZE",
    "BoundaryPoint",
    "BoundaryReport",
    "Mode",
    "SimResult",
    "SimSpec",
    "analytic_outage",
    "compare_modes",
    "simulate",
    "validate_boundary",
]

CHUNK_SIZE = 1 << 16
_SEED_MASK = (1 << 64) - 1


class Mode(enum.Enum):
    NON_COOPERATIVE = 0
    COOPERATIVE = 1

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        if key in ("noncoop", "non-cooperative", "noncooperative", "nc"):
            return cls.NON_COOPERATIVE
        if key in ("coop", "cooperative", "c"):
            return cls.COOPERATIVE
        raise ValueError(f"unknown mode {value!r}")


@dataclass(frozen=True)
class SimSpec:
    n_trials: int
    seed: int
    gamma_bar: float
    threshold: float
    mode: Mode = Mode.NON_COOPERATIVE

    def __post_init__(self):
        if int(self.n_trials) != self.n_trials or self.n_trials < 1:
            raise DomainError(f"n_trials must be an integer >= 1, got {self.n_trials!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed <= _SEED_MASK:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not self.gamma_bar > 0.0 or math.isinf(self.gamma_bar):
            raise DomainError(f"gamma_bar must be positive and finite, got {self.gamma_bar!r}")
        if not self.threshold >= 0.0:
            raise DomainError(f"threshold must be >= 0, got {self.threshold!r}")
        object.__setattr__(self, "mode", Mode.parse(self.mode))


@dataclass(frozen=True)
class SimResult:
    outage_count: int
    n_trials: int

    @property
    def estimate(self) -> float:
        return self.outage_count / self.n_trials

    @property
    def std_error(self) -> float:
        """Binomial standard error ``sqrt(p(1-p)/n)`` of the estimate."""
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.n_trials)

    def z_score(self, reference: float) -> float | None:
        """Standardised deviation from ``reference``; None when std_error is 0."""
        se = self.std_error
        if se == 0.0:
            return None
        return (self.estimate - reference) / se


def analytic_outage(spec: SimSpec) -> float:
    """Closed-form outage probability the simulation should converge to."""
    if spec.mode is Mode.NON_COOPERATIVE:
        return outage_noncoop(spec.threshold, spec.gamma_bar)
    return outage_coop(spec.threshold, spec.gamma_bar)


def _exponential(rng: np.random.Generator, mean: float, n: int) -> np.ndarray:
    # 1 - U maps [0, 1) onto (0, 1], so the log is always finite
    return -mean * np.log1p(-rng.random(n))


def _chunk_outages(spec: SimSpec, k: int, n: int) -> int:
    ss = np.random.SeedSequence(entropy=(spec.seed, spec.mode.value), spawn_key=(k,))
    rng = np.random.Generator(np.random.PCG64(ss))
    if spec.mode is Mode.NON_COOPERATIVE:
        snr = _exponential(rng, spec.gamma_bar, n)
    else:
        # own-data replica plus partner-relayed replica, each at half power, MRC-summed
        half = 0.5 * spec.gamma_bar
        snr = _exponential(rng, half, n)
        snr += _exponential(rng, half, n)
    return int(np.count_nonzero(snr < spec.threshold))


def simulate(spec: SimSpec, workers: int | None = None) -> SimResult:
    """Count outages over ``spec.n_trials`` independent fading blocks.

    ``workers`` > 1 spreads chunks over a thread pool; the result does not
    depend on it.
    """
    if spec.threshold == 0.0:
        return SimResult(0, spec.n_trials)
    sizes = [CHUNK_SIZE] * (spec.n_trials // CHUNK_SIZE)
    if spec.n_trials % CHUNK_SIZE:
        sizes.append(spec.n_trials % CHUNK_SIZE)
    jobs = list(enumerate(sizes))
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda job: _chunk_outages(spec, *job), jobs))
    else:
        counts = [_chunk_outages(spec, k, n) for k, n in jobs]
    return SimResult(sum(counts), spec.n_trials)


@dataclass(frozen=True)
class BoundaryPoint:
    """Empirical comparison of both modes at one theta_prime."""

    theta_prime: float
    noncoop: SimResult
    coop: SimResult
    z_limit: float = 4.0

    @property
    def difference(self) -> float:
        """Estimated P_nc - P_c; positive means cooperation helps."""
        return self.noncoop.estimate - self.coop.estimate

    @property
    def std_error(self) -> float:
        return math.hypot(self.noncoop.std_error, self.coop.std_error)

    @property
    def outcome(self) -> str:
        """``"beneficial"``, ``"harmful"`` or ``"indeterminate"`` at ``z_limit`` sigmas."""
        se = self.std_error
        if se == 0.0 or abs(self.difference) <= self.z_limit * se:
            return "indeterminate"
        return "beneficial" if self.difference > 0.0 else "harmful"


@dataclass(frozen=True)
class BoundaryReport:
    theta: float
    gamma_bar: float
    exact_threshold: float
    points: tuple[BoundaryPoint, ...] = field(default_factory=tuple)

    @property
    def flips(self) -> bool:
        """True when the points resolve as beneficial below and harmful above."""
        outcomes = [p.outcome for p in sorted(self.points, key=lambda p: p.theta_prime)]
        return (
            len(outcomes) >= 2
            and outcomes[0] == "beneficial"
            and outcomes[-1] == "harmful"
        )

    @property
    def status(self) -> str:
        if self.flips:
            return "flips"
        if any(p.outcome == "indeterminate" for p in self.points):
            return "indeterminate"
        return "no-flip"


def compare_modes(
    theta: float,
    theta_prime: float,
    gamma_bar: float,
    n_trials: int,
    seed: int,
    workers: int | None = None,
    z_limit: float = 4.0,
) -> BoundaryPoint:
    """Simulate both modes at one operating point with the same seed.

    The mode is folded into the seed material, so the two runs use independent streams.
    """
    nc = simulate(SimSpec(n_trials, seed, gamma_bar, theta, Mode.NON_COOPERATIVE), workers)
    c = simulate(SimSpec(n_trials, seed, gamma_bar, theta_prime, Mode.COOPERATIVE), workers)
    return BoundaryPoint(theta_prime, nc, c, z_limit)


def validate_boundary(
    theta: float,
    gamma_bar: float,
    n_trials: int,
    seed: int,
    factors: tuple[float, ...] = (0.9, 1.1),
    workers: int | None = None,
    z_limit: float = 4.0,
) -> BoundaryReport:
    """Check empirically that the outage ordering flips at the exact threshold.

    Both modes are simulated at ``factor * exact_threshold`` for each factor.
    Points too close to the boundary to resolve come out as
    ``"indeterminate"``; they are not treated as failures.
    """
    if not 0.0 < theta / gamma_bar < 1.0:
        raise DomainError(f"validate_boundary needs 0 < theta/gamma_bar < 1, got {theta / gamma_bar!r}")
    limit = exact_threshold(theta, gamma_bar)
    points = tuple(
        compare_modes(theta, f * limit, gamma_bar, n_trials, seed, workers, z_limit)
        for f in factors
    )
    return BoundaryReport(theta, gamma_bar, limit, points)
