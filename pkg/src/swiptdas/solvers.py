"""Closed-form optimal splitting and power allocation for both objectives.

Both problems share the same structure: each user's split alpha_j is pushed to
the largest value that still meets its harvest floor (rates grow with alpha,
harvested energy shrinks), and the superposition power p2 then has a
closed-form optimum.

With b_j = err_power_j + eff_noise_j / alpha_j the rates collapse to

    decode_weak  = log2((x1 + b1) / (p2 + b1)),   x_j = p_ctrl + ratio_j * p_rru
    decode_cross = log2((x2 + b2) / (p2 + b2)),
    rate_strong  = log2((b2 + p2) / b2),

so rate thresholds and equal-rate crossings reduce to linear or quadratic
equations in p2.  alpha_j = 0 makes b_j infinite (that user's decoder gets no
power); the guards below keep the arithmetic finite and NaN-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import DerivedParams
from .config import SystemConfig
from .efficiency import EfficiencyCurve
from .rates import SplitRates, compute_rates, harvested_power, rectifier_input_power

PROBLEM_MAX_SUM = "max-sum"
PROBLEM_MAX_MIN = "max-min"
SCHEME_DAS_NOMA = "das-noma"
SCHEME_NOMA_ONLY = "noma-only"
SCHEME_DAS_OMA = "das-oma"


@dataclass(frozen=True)
class Solution:
    """Outcome of one solve.  On outage the objective counts as zero and the
    operating-point fields are None; outage_reason names the first violated
    condition."""

    problem: str
    scheme: str
    outage: bool
    objective: float
    alpha1: float | None = None
    alpha2: float | None = None
    p2: float | None = None
    rates: SplitRates | None = None
    e1: float | None = None
    e2: float | None = None
    outage_reason: str | None = None

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "scheme": self.scheme,
            "outage": self.outage,
            "objective_bpshz": self.objective,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "p2_w": self.p2,
            "rates_bpshz": self.rates.as_dict() if self.rates is not None else None,
            "e1_w": self.e1,
            "e2_w": self.e2,
            "outage_reason": self.outage_reason,
        }


def _outage(problem: str, scheme: str, reason: str) -> Solution:
    return Solution(problem, scheme, True, 0.0, outage_reason=reason)


def alpha_max(
    params: DerivedParams,
    curve: EfficiencyCurve,
    e_min: float,
    user: int,
    *,
    tol: float = 1e-9,
) -> float | None:
    """Largest split in [0, 1] whose harvested power still meets e_min.

    Returns None when even alpha = 0 (everything to the harvester) falls
    short.  Harvested power is continuous and non-increasing in alpha and hits
    zero at alpha = 1, so bisection applies; it stops once the bracket is
    below 1e-12 or the energy residual is within tol.
    """
    if e_min <= 0.0:
        return 1.0

    def harvested(alpha: float) -> float:
        return float(curve.harvested(rectifier_input_power(alpha, params, user)))

    if harvested(0.0) < e_min:
        return None
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        e_mid = harvested(mid)
        if abs(e_mid - e_min) <= tol:
            return mid
        if e_mid >= e_min:
            lo = mid
        else:
            hi = mid
    return lo


def _effective_floor(params: DerivedParams, alpha: float, user: int) -> float:
    """b_j: self-interference plus normalized noise amplified by the split."""
    err = params.err_power_weak if user == 1 else params.err_power_strong
    noise = params.eff_noise_weak if user == 1 else params.eff_noise_strong
    if alpha <= 0.0:
        return math.inf
    return err + noise / alpha


def alpha_thresholds(
    p2: float, params: DerivedParams, r_min: float
) -> tuple[float, float, float]:
    """Smallest splits meeting rate r_min at fixed p2, for the three decodes
    (weak own, cross, strong own).  +inf when no split in (0, 1] suffices;
    all zero when r_min is zero."""
    if r_min <= 0.0:
        return (0.0, 0.0, 0.0)
    tw = 2.0 ** r_min
    gamma = tw - 1.0

    def threshold(x: float, err: float, noise: float, own_strong: bool) -> float:
        if own_strong:
            denom = p2 - gamma * err
        else:
            denom = x - gamma * err - tw * p2
        if denom <= 0.0:
            return math.inf
        return gamma * noise / denom

    x1 = params.p_ctrl + params.rru_gain_ratio_weak * params.p_rru
    x2 = params.p_ctrl + params.rru_gain_ratio_strong * params.p_rru
    return (
        threshold(x1, params.err_power_weak, params.eff_noise_weak, False),
        threshold(x2, params.err_power_strong, params.eff_noise_strong, False),
        threshold(0.0, params.err_power_strong, params.eff_noise_strong, True),
    )


def _finish(
    problem: str,
    scheme: str,
    params: DerivedParams,
    curve: EfficiencyCurve,
    alpha1: float,
    alpha2: float,
    p2: float,
) -> Solution:
    rates = compute_rates(alpha1, alpha2, p2, params)
    if problem == PROBLEM_MAX_SUM:
        objective = rates.rate_weak + rates.rate_strong
    else:
        objective = min(rates.rate_weak, rates.rate_strong)
    return Solution(
        problem=problem,
        scheme=scheme,
        outage=False,
        objective=float(objective),
        alpha1=float(alpha1),
        alpha2=float(alpha2),
        p2=float(p2),
        rates=rates,
        e1=harvested_power(alpha1, params, 1, curve),
        e2=harvested_power(alpha2, params, 2, curve),
    )


def maxsum_power_window(
    params: DerivedParams, alpha1: float, alpha2: float, r_min: float
) -> tuple[float, float]:
    """Feasible p2 interval [lo, hi] at fixed splits for the max-sum problem:
    below hi both pre-cancellation decodes reach r_min, above lo the strong
    user's own rate does.  Empty when lo > hi."""
    pm = params.p_ctrl
    if r_min <= 0.0:
        return 0.0, pm
    b1 = _effective_floor(params, alpha1, 1)
    b2 = _effective_floor(params, alpha2, 2)
    tw = 2.0 ** r_min
    gamma = tw - 1.0
    x1 = pm + params.rru_gain_ratio_weak * params.p_rru
    x2 = pm + params.rru_gain_ratio_strong * params.p_rru
    p_hi_weak = (x1 - gamma * b1) / tw if math.isfinite(b1) else -math.inf
    p_hi_cross = (x2 - gamma * b2) / tw if math.isfinite(b2) else -math.inf
    p_lo_strong = gamma * b2
    lo = max(0.0, p_lo_strong)
    hi = min(p_hi_weak, p_hi_cross, pm)
    return lo, hi


def solve_maxsum(
    params: DerivedParams,
    config: SystemConfig,
    curve: EfficiencyCurve,
    *,
    scheme: str = SCHEME_DAS_NOMA,
) -> Solution:
    """Maximize the rate sum subject to per-user rate floors r_min and
    harvest floors; splits sit at their energy-limited maxima and p2 lands on
    the favorable edge of the feasible window."""
    a1 = alpha_max(params, curve, config.e_min_user1_w, 1, tol=config.bisection_tol)
    if a1 is None:
        return _outage(PROBLEM_MAX_SUM, scheme, "energy-floor-unreachable-weak")
    a2 = alpha_max(params, curve, config.e_min_user2_w, 2, tol=config.bisection_tol)
    if a2 is None:
        return _outage(PROBLEM_MAX_SUM, scheme, "energy-floor-unreachable-strong")
    lo, hi = maxsum_power_window(params, a1, a2, config.r_min_bpshz)
    if lo > hi:
        return _outage(PROBLEM_MAX_SUM, scheme, "rate-window-empty")
    b1 = _effective_floor(params, a1, 1)
    b2 = _effective_floor(params, a2, 2)
    p2 = hi if b1 >= b2 else lo
    return _finish(PROBLEM_MAX_SUM, scheme, params, curve, a1, a2, p2)


def maxmin_crossing_points(
    params: DerivedParams, alpha1: float, alpha2: float
) -> tuple[float, float]:
    """p2 values where the strong user's rate meets each weak-user decode.

    Solves p2^2 + (b1+b2) p2 - b2 x1 = 0 and (p2+b2)^2 = b2 (x2+b2) in their
    cancellation-free forms.  alpha2 must be positive; alpha1 = 0 puts the
    first crossing at zero (the weak decode is stuck at rate zero).
    """
    if alpha2 <= 0.0:
        raise ValueError("crossing points need alpha2 > 0")
    b2 = _effective_floor(params, alpha2, 2)
    x1 = params.p_ctrl + params.rru_gain_ratio_weak * params.p_rru
    x2 = params.p_ctrl + params.rru_gain_ratio_strong * params.p_rru
    b1 = _effective_floor(params, alpha1, 1)
    if math.isinf(b1):
        cross_weak = 0.0
    else:
        s = b1 + b2
        disc = s * s + 4.0 * b2 * x1
        assert disc >= 0.0
        cross_weak = 2.0 * b2 * x1 / (s + math.sqrt(disc))
    disc2 = b2 * (x2 + b2)
    assert disc2 >= 0.0
    cross_strong = b2 * x2 / (b2 + math.sqrt(disc2))
    return cross_weak, cross_strong


def solve_maxmin(
    params: DerivedParams,
    config: SystemConfig,
    curve: EfficiencyCurve,
    *,
    scheme: str = SCHEME_DAS_NOMA,
) -> Solution:
    """Maximize the worse of the two delivered rates subject to the harvest
    floors and the strong user's pre-cancellation rate floor r_sic.

    The weak-user rate falls and the strong-user rate grows with p2, so the
    optimum is the equal-rate crossing unless the r_sic cap or the budget
    binds first.
    """
    a1 = alpha_max(params, curve, config.e_min_user1_w, 1, tol=config.bisection_tol)
    if a1 is None:
        return _outage(PROBLEM_MAX_MIN, scheme, "energy-floor-unreachable-weak")
    a2 = alpha_max(params, curve, config.e_min_user2_w, 2, tol=config.bisection_tol)
    if a2 is None:
        return _outage(PROBLEM_MAX_MIN, scheme, "energy-floor-unreachable-strong")
    pm = params.p_ctrl
    if a2 <= 0.0:
        # The strong user cannot decode at all; only r_sic = 0 tolerates that.
        if config.r_sic_bpshz > 0.0:
            return _outage(PROBLEM_MAX_MIN, scheme, "sic-floor-unreachable")
        return _finish(PROBLEM_MAX_MIN, scheme, params, curve, a1, a2, 0.0)
    b2 = _effective_floor(params, a2, 2)
    x2 = pm + params.rru_gain_ratio_strong * params.p_rru
    tw_sic = 2.0 ** config.r_sic_bpshz
    p_sic = (x2 - (tw_sic - 1.0) * b2) / tw_sic
    if p_sic <= 0.0:
        return _outage(PROBLEM_MAX_MIN, scheme, "sic-floor-unreachable")
    cross_weak, cross_strong = maxmin_crossing_points(params, a1, a2)
    balanced = min(cross_weak, cross_strong)
    p2 = min(balanced, p_sic, pm)
    return _finish(PROBLEM_MAX_MIN, scheme, params, curve, a1, a2, p2)
