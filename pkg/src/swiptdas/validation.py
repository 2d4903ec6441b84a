"""Cross-checking the closed-form allocators against the brute-force oracle.

For random realizations, both non-outage solvers must agree with grid search
plus refine on the objective to a tight tolerance, and the outage verdicts
must agree except on instances whose feasible region is too narrow for the
grid to be guaranteed a point.  The exclusion rule is constructive, not a
fudge factor: the rates grow with the splits and the constraint thresholds
are monotone in p2, so whenever every feasible window is at least one grid
spacing wide (checked at its worst p2 endpoint) the grid provably contains a
feasible point; only instances failing that width check may be excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .channel import assign_user_roles, derive_params, sample_channels, sample_placement
from .config import SystemConfig
from .efficiency import EfficiencyCurve, curve_from_config
from .montecarlo import trial_rng
from .oracle import grid_search, refine
from .solvers import (
    PROBLEM_MAX_MIN,
    PROBLEM_MAX_SUM,
    Solution,
    alpha_max,
    alpha_thresholds,
    solve_maxmin,
    solve_maxsum,
)

# Distinct stream domain so validation draws never collide with sweep trials.
VALIDATION_STREAM = 10**6

# Safety factor on the one-grid-spacing width bound, absorbing the solver's
# energy-bisection tolerance and float rounding at window edges.
_WIDTH_FACTOR = 1.02

# Boundary margin: outage verdicts may differ without counting as a
# disagreement when the instance sits within this normalized distance of
# feasible/infeasible (or within one grid spacing, whichever is larger).
BOUNDARY_MARGIN = 1e-3


@dataclass
class Disagreement:
    instance: int
    problem: str
    kind: str
    detail: str


@dataclass
class ValidationReport:
    num_instances: int
    num_compared: int = 0
    num_excluded_narrow: int = 0
    num_outage_both: int = 0
    max_gap: float = 0.0
    worst_instance: int = -1
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.disagreements and self.max_gap <= 1e-4


def _grid_can_certify(
    problem: str,
    params,
    config: SystemConfig,
    curve: EfficiencyCurve,
) -> bool:
    """True when the decision grid provably contains a feasible point, so an
    outage verdict from the grid would be a genuine disagreement.

    Constructive argument: shrink each split ceiling by one alpha margin
    (at least one grid spacing, so a grid split exists between any rate
    threshold and the ceiling) and invert the rate thresholds to the p2
    interval on which every threshold stays below the shrunken ceiling.
    When that interval is at least one p2 margin wide it contains a grid
    p2, and that column then holds a fully feasible grid point.  Checking
    the raw feasible window at its endpoints would be vacuous: the window
    edges are by definition the p2 values where a threshold meets the
    ceiling exactly.
    """
    margin_alpha = max(
        BOUNDARY_MARGIN, _WIDTH_FACTOR / (config.grid_points_alpha - 1)
    )
    margin_p2 = params.p_ctrl * max(
        BOUNDARY_MARGIN, _WIDTH_FACTOR / (config.grid_points_p2 - 1)
    )
    a1 = alpha_max(params, curve, config.e_min_user1_w, 1, tol=config.bisection_tol)
    a2 = alpha_max(params, curve, config.e_min_user2_w, 2, tol=config.bisection_tol)
    if a1 is None or a2 is None:
        return False
    if problem == PROBLEM_MAX_SUM:
        if config.r_min_bpshz <= 0.0:
            return True  # the all-harvest corner is feasible and on the grid
        if a1 <= margin_alpha or a2 <= margin_alpha:
            return False
        tw = 2.0 ** config.r_min_bpshz
        gamma = tw - 1.0
        x1 = params.p_ctrl + params.rru_gain_ratio_weak * params.p_rru
        x2 = params.p_ctrl + params.rru_gain_ratio_strong * params.p_rru
        need1 = gamma * params.eff_noise_weak / (a1 - margin_alpha)
        need2 = gamma * params.eff_noise_strong / (a2 - margin_alpha)
        p_hi = min(
            (x1 - gamma * params.err_power_weak - need1) / tw,
            (x2 - gamma * params.err_power_strong - need2) / tw,
            params.p_ctrl,
        )
        p_lo = max(0.0, gamma * params.err_power_strong + need2)
        return p_hi - p_lo >= margin_p2
    # max-min: p2 = 0 is always on the grid and only the pre-cancellation
    # floor constrains alpha2 there; alpha1 = 0 is always energy-feasible
    # once alpha_max exists.
    _, thr_cross_zero, _ = alpha_thresholds(0.0, params, config.r_sic_bpshz)
    return a2 - thr_cross_zero >= margin_alpha


def _grid_point_slack(
    problem: str, grid_sol: Solution, config: SystemConfig
) -> float:
    """Smallest constraint slack of a feasible grid point: rate slacks in
    bits, harvest slacks normalized by their floors."""
    rates = grid_sol.rates
    if problem == PROBLEM_MAX_SUM:
        slack = min(
            rates.rate_weak - config.r_min_bpshz,
            rates.rate_strong - config.r_min_bpshz,
        )
    else:
        slack = rates.decode_cross - config.r_sic_bpshz
    for e, floor in ((grid_sol.e1, config.e_min_user1_w), (grid_sol.e2, config.e_min_user2_w)):
        if floor > 0.0:
            slack = min(slack, (e - floor) / floor)
    return slack


def check_instance(
    instance: int,
    problem: str,
    params,
    config: SystemConfig,
    curve: EfficiencyCurve,
    report: ValidationReport,
) -> None:
    if problem == PROBLEM_MAX_SUM:
        closed = solve_maxsum(params, config, curve)
    else:
        closed = solve_maxmin(params, config, curve)
    grid = grid_search(problem, params, config, curve)
    if closed.outage and grid.outage:
        report.num_outage_both += 1
        return
    if closed.outage != grid.outage:
        if closed.outage:
            # The grid found a point the closed form rejected: admissible
            # only when that point sits within the margin of a boundary.
            if _grid_point_slack(problem, grid, config) <= BOUNDARY_MARGIN:
                report.num_excluded_narrow += 1
                return
            report.disagreements.append(
                Disagreement(
                    instance,
                    problem,
                    "closed-outage-grid-feasible",
                    f"grid objective {grid.objective:.6g}",
                )
            )
            return
        if not _grid_can_certify(problem, params, config, curve):
            report.num_excluded_narrow += 1
            return
        report.disagreements.append(
            Disagreement(
                instance,
                problem,
                "grid-outage-closed-feasible",
                f"closed objective {closed.objective:.6g}, reason {grid.outage_reason}",
            )
        )
        return
    refined = refine(grid, params, config, curve)
    gap = abs(closed.objective - refined.objective)
    report.num_compared += 1
    if gap > report.max_gap:
        report.max_gap = gap
        report.worst_instance = instance
    if refined.objective > closed.objective + 1e-4:
        report.disagreements.append(
            Disagreement(
                instance,
                problem,
                "oracle-beats-closed-form",
                f"closed {closed.objective:.8g} vs refined {refined.objective:.8g}",
            )
        )


def validate_closed_forms(
    config: SystemConfig,
    num_instances: int,
    *,
    problems: tuple[str, ...] = (PROBLEM_MAX_SUM, PROBLEM_MAX_MIN),
    progress=None,
) -> dict[str, ValidationReport]:
    """Run the cross-check on num_instances random realizations per problem."""
    curve = curve_from_config(config)
    reports = {p: ValidationReport(num_instances) for p in problems}
    for instance in range(num_instances):
        rng = trial_rng(config.seed, VALIDATION_STREAM, instance)
        placement = sample_placement(config, rng)
        realization = assign_user_roles(sample_channels(placement, config, rng))
        params = derive_params(realization, config)
        for problem in problems:
            check_instance(instance, problem, params, config, curve, reports[problem])
        if progress is not None:
            progress(instance)
    return reports
