"""Brute-force reference optimizer: exhaustive grid search plus local refine.

Independent of the closed forms: it evaluates the rate model directly on a
uniform (alpha1, alpha2, p2) grid, applies the constraint masks, and takes the
feasible argmax.  refine() then polishes a seed point by coordinate descent
on shrinking spans, which drives the grid's O(spacing) gap down far enough to
validate the closed-form optima tightly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .channel import DerivedParams
from .config import SystemConfig
from .efficiency import EfficiencyCurve
from .rates import (
    SchemeRateModel,
    harvested_power,
    noma_rate_model,
    rectifier_input_power,
)
from .solvers import PROBLEM_MAX_MIN, PROBLEM_MAX_SUM, SCHEME_DAS_NOMA, Solution


def eps_grid(n_alpha: int, n_p2: int) -> float:
    """Worst-case objective gap of the grid optimum: two bits of headroom per
    axis spacing (rate slopes in this model stay below 2 bit/s/Hz per unit)."""
    return 2.0 * (1.0 / (n_alpha - 1) + 1.0 / (n_p2 - 1))


def _harvest_feasible(alphas, params, curve, e_min, user):
    rf = np.array([rectifier_input_power(a, params, user) for a in alphas])
    return np.asarray(curve.harvested(rf)) >= e_min


def _rate_matrices(model: SchemeRateModel, alphas, p2s):
    a_col = alphas[:, None]
    z1 = model.own_weak.rate(a_col, p2s[None, :])
    if model.cross is not None:
        z2 = model.cross.rate(a_col, p2s[None, :])
    else:
        z2 = np.full((alphas.size, p2s.size), np.inf)
    r2 = model.own_strong.rate(a_col, p2s[None, :])
    return z1, z2, r2


def _finish_model(
    problem: str,
    scheme: str,
    params: DerivedParams,
    curve: EfficiencyCurve,
    model: SchemeRateModel,
    alpha1: float,
    alpha2: float,
    p2: float,
) -> Solution:
    rates = model.rate_tuple(alpha1, alpha2, p2)
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


def grid_search(
    problem: str,
    params: DerivedParams,
    config: SystemConfig,
    curve: EfficiencyCurve,
    *,
    model: SchemeRateModel | None = None,
    scheme: str = SCHEME_DAS_NOMA,
    n_alpha: int | None = None,
    n_p2: int | None = None,
) -> Solution:
    """Feasible argmax over the uniform decision grid.

    The constraint set matches the closed-form solvers: harvest floors on
    both splits, and either both-rates >= r_min (max-sum) or the
    pre-cancellation decode >= r_sic (max-min).
    """
    if model is None:
        model = noma_rate_model(params)
    n_alpha = config.grid_points_alpha if n_alpha is None else n_alpha
    n_p2 = config.grid_points_p2 if n_p2 is None else n_p2
    alphas = np.linspace(0.0, 1.0, n_alpha)
    p2s = np.linspace(0.0, params.p_ctrl, n_p2)
    z1, z2, r2 = _rate_matrices(model, alphas, p2s)
    efeas1 = _harvest_feasible(alphas, params, curve, config.e_min_user1_w, 1)
    efeas2 = _harvest_feasible(alphas, params, curve, config.e_min_user2_w, 2)
    if problem == PROBLEM_MAX_SUM:
        best, i1, i2, ip = _kernels.maxsum_best(
            z1, z2, r2, efeas1, efeas2, config.r_min_bpshz
        )
    elif problem == PROBLEM_MAX_MIN:
        best, i1, i2, ip = _kernels.maxmin_best(
            z1, z2, r2, efeas1, efeas2, config.r_sic_bpshz
        )
    else:
        raise ValueError(f"unknown problem {problem!r}")
    if not math.isfinite(best):
        return Solution(problem, scheme, True, 0.0, outage_reason="no-feasible-grid-point")
    return _finish_model(
        problem, scheme, params, curve, model, alphas[i1], alphas[i2], p2s[ip]
    )


@dataclass
class _Candidate:
    alpha1: float
    alpha2: float
    p2: float
    objective: float

    def get(self, coord: str) -> float:
        return getattr(self, coord)


def _feasible_objective(
    problem, params, config, curve, model, alpha1, alpha2, p2
) -> float:
    """Objective at a point, or -inf when any constraint fails."""
    rates = model.rate_tuple(alpha1, alpha2, p2)
    if problem == PROBLEM_MAX_SUM:
        floor = config.r_min_bpshz
        if rates.rate_weak < floor or rates.rate_strong < floor:
            return -math.inf
        objective = rates.rate_weak + rates.rate_strong
    else:
        if rates.decode_cross < config.r_sic_bpshz:
            return -math.inf
        objective = min(rates.rate_weak, rates.rate_strong)
    if harvested_power(alpha1, params, 1, curve) < config.e_min_user1_w:
        return -math.inf
    if harvested_power(alpha2, params, 2, curve) < config.e_min_user2_w:
        return -math.inf
    return float(objective)


def _moved_to(cand: _Candidate, coord: str, value: float, objective: float) -> _Candidate:
    trial = {"alpha1": cand.alpha1, "alpha2": cand.alpha2, "p2": cand.p2}
    trial[coord] = value
    return _Candidate(objective=objective, **trial)


def _feasibility_edge(evaluate, cand, coord, target, tol):
    """Boundary of the feasible interval along one coordinate.

    Along any single coordinate the feasible set is an interval around the
    (feasible) current point: rates are monotone in a split, and each p2
    constraint is one-sided.  So bisection between the current point and an
    infeasible target converges to the constraint boundary; returns the
    feasible-side (value, objective), or None when nothing past the current
    point is feasible at tol resolution.
    """
    obj_target = evaluate(cand, coord, target)
    if math.isfinite(obj_target):
        return target, obj_target
    feas = cand.get(coord)
    infeas = target
    feas_obj = None
    while abs(infeas - feas) > tol:
        mid = 0.5 * (feas + infeas)
        if mid == feas or mid == infeas:
            break
        obj = evaluate(cand, coord, mid)
        if math.isfinite(obj):
            feas = mid
            feas_obj = obj
        else:
            infeas = mid
    if feas_obj is None:
        return None
    return feas, feas_obj


def _scan_coordinate(
    cand: _Candidate,
    coord: str,
    lo: float,
    hi: float,
    span: float,
    points: int,
    evaluate,
    *,
    frontier: bool = True,
    tol: float = 1e-12,
) -> tuple[_Candidate, bool]:
    """One coordinate update: scan a symmetric window, take the best strict
    improvement, or on an exact objective plateau drift a split upward
    (larger splits weakly dominate: rates never fall with a split, and the
    headroom relaxes the rate floors that would otherwise pin p2).

    When the winner lands on the window edge the window doubles and the scan
    repeats, so a long monotone run is followed in one update instead of
    being capped at one span per round.

    With frontier=True the scan then probes the exact feasibility boundary in
    each relevant direction (upward for splits, both ways for p2), because
    optima frequently sit on a constraint boundary whose location shifts with
    the other coordinates much faster than the window step resolves.
    """
    moved = False
    for _expand in range(16):
        center = cand.get(coord)
        lo_c = max(lo, center - span)
        hi_c = min(hi, center + span)
        if hi_c <= lo_c:
            break
        step = (hi_c - lo_c) / (points - 1)
        best_value = None
        best_obj = cand.objective
        plateau_value = None
        for value in np.linspace(lo_c, hi_c, points):
            value = float(value)
            if value == center:
                continue
            obj = evaluate(cand, coord, value)
            if obj > best_obj:
                best_obj = obj
                best_value = value
            elif obj == cand.objective and coord != "p2" and value > center:
                if plateau_value is None or value > plateau_value:
                    plateau_value = value
        if best_value is not None:
            winner = best_value
            cand = _moved_to(cand, coord, winner, best_obj)
        elif plateau_value is not None:
            winner = plateau_value
            cand = _moved_to(cand, coord, winner, cand.objective)
        else:
            break
        moved = True
        at_edge = winner >= hi_c - 0.5 * step or winner <= lo_c + 0.5 * step
        if not at_edge or (lo_c <= lo and hi_c >= hi):
            break
        span *= 2.0
    if frontier:
        targets = (hi, lo) if coord == "p2" else (hi,)
        for target in targets:
            center = cand.get(coord)
            if target == center:
                continue
            edge = _feasibility_edge(evaluate, cand, coord, target, tol)
            if edge is None:
                continue
            value, obj = edge
            if obj > cand.objective:
                cand = _moved_to(cand, coord, value, obj)
                moved = True
            elif (
                obj == cand.objective and coord != "p2" and value > center + tol
            ):
                cand = _moved_to(cand, coord, value, obj)
                moved = True
    return cand, moved


def refine(
    seed: Solution,
    params: DerivedParams,
    config: SystemConfig,
    curve: EfficiencyCurve,
    *,
    model: SchemeRateModel | None = None,
    rounds: int = 3,
    shrink: float = 10.0,
    points_per_axis: int = 41,
    span_alpha: float | None = None,
    span_p2: float | None = None,
    max_cycles: int = 40,
    frontier: bool = True,
) -> Solution:
    """Coordinate descent around a non-outage seed: rounds of shrinking scan
    spans (one grid spacing to start, a tenth of that each round after), each
    round cycling through the coordinates until a full cycle makes no move.
    Only feasible points are ever accepted, and the result is never worse
    than the seed.

    The within-round repetition matters because the constraint boundaries
    couple the coordinates: raising a split can unlock a long p2 run whose
    length has nothing to do with the current span; the expanding scans in
    _scan_coordinate chase such runs to their end before the span shrinks.
    frontier=True additionally snaps each coordinate to its exact feasibility
    boundary when that helps; disable it where Monte-Carlo-level accuracy is
    enough and the bisection cost is not worth paying per trial.
    """
    if seed.outage:
        raise ValueError("refine needs a non-outage seed")
    if model is None:
        model = noma_rate_model(params)
    if span_alpha is None:
        span_alpha = 1.0 / (config.grid_points_alpha - 1)
    if span_p2 is None:
        span_p2 = params.p_ctrl / (config.grid_points_p2 - 1)
    problem = seed.problem
    seed_objective = _feasible_objective(
        problem, params, config, curve, model, seed.alpha1, seed.alpha2, seed.p2
    )
    if not math.isfinite(seed_objective):
        # Seed sits on a feasibility edge the tolerance pushed out; keep it.
        return seed
    cand = _Candidate(seed.alpha1, seed.alpha2, seed.p2, seed_objective)

    def evaluate(base: _Candidate, coord: str, value: float) -> float:
        trial = {
            "alpha1": base.alpha1,
            "alpha2": base.alpha2,
            "p2": base.p2,
            coord: value,
        }
        return _feasible_objective(problem, params, config, curve, model, **trial)

    bounds = {
        "alpha1": (0.0, 1.0, span_alpha),
        "alpha2": (0.0, 1.0, span_alpha),
        "p2": (0.0, params.p_ctrl, span_p2),
    }
    for round_idx in range(rounds):
        scale = shrink ** (-round_idx)
        for _cycle in range(max_cycles):
            any_moved = False
            for coord, (lo, hi, span) in bounds.items():
                cand, moved = _scan_coordinate(
                    cand,
                    coord,
                    lo,
                    hi,
                    span * scale,
                    points_per_axis,
                    evaluate,
                    frontier=frontier,
                    tol=1e-12 * max(1.0, hi - lo),
                )
                any_moved = any_moved or moved
            if not any_moved:
                break
    result = _finish_model(
        problem, seed.scheme, params, curve, model, cand.alpha1, cand.alpha2, cand.p2
    )
    if result.objective < seed.objective:
        return seed
    return result
