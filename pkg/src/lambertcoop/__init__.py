"""Real Lambert W branches, closed-form bounds on W_{-1}, and their use in
deciding when decode-and-forward cooperation lowers outage probability."""

from .bounds import (
    BoundCoefficient,
    F,
    barry_approx,
    g,
    lemma2_sandwich,
    log_lower_bound,
    log_upper_bound,
    wm1_bounds,
)
from .cooperation import (
    CooperationAssessment,
    LinkBudget,
    Verdict,
    assess,
    avoid_threshold,
    db_to_linear,
    exact_threshold,
    linear_to_db,
    min_gamma,
    outage_coop,
    outage_noncoop,
    safe_threshold,
)
from .errors import ConvergenceError, DomainError
from .lambert import (
    Branch,
    EvalOptions,
    WEvaluation,
    branch_point_series,
    lambert_w,
    log_identity_gap,
    residual,
    w0,
    wm1,
)
from .montecarlo import Mode, SimResult, SimSpec, simulate, validate_boundary

__version__ = "0.1.0"
