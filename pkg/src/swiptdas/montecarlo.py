"""Monte-Carlo harness: paired trials, deterministic streams, aggregation.

Every trial draws one placement and one channel realization, then all three
schemes and both objectives are solved on that same realization (paired
comparison; TrialRecord carries a hash of the realization so pairing is
checkable).  Randomness is fully determined by (seed, sweep_index,
trial_index) through numpy's SeedSequence spawn keys, so results are
reproducible trial-by-trial regardless of execution order or thread count.

Aggregation convention: outage trials contribute zero to the mean objective;
splits and harvested energies average over non-outage trials only (NaN when a
cell has none).
"""

from __future__ import annotations

import dataclasses
import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .baselines import solve_noma_only, solve_oma_das
from .channel import (
    ChannelRealization,
    assign_user_roles,
    derive_params,
    no_das_params,
    sample_channels,
    sample_placement,
)
from .config import SystemConfig, dbm_to_watts
from .efficiency import EfficiencyCurve, curve_from_config
from .solvers import (
    PROBLEM_MAX_MIN,
    PROBLEM_MAX_SUM,
    SCHEME_DAS_NOMA,
    SCHEME_DAS_OMA,
    SCHEME_NOMA_ONLY,
    Solution,
    solve_maxmin,
    solve_maxsum,
)

PROBLEMS = (PROBLEM_MAX_SUM, PROBLEM_MAX_MIN)
SCHEMES = (SCHEME_DAS_NOMA, SCHEME_NOMA_ONLY, SCHEME_DAS_OMA)


def trial_rng(seed: int, sweep_index: int, trial_index: int) -> np.random.Generator:
    """The one generator for a trial; spawn keys keep streams independent."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(sweep_index, trial_index))
    )


def realization_hash(realization: ChannelRealization) -> str:
    """Digest of every array in the realization; shared across schemes."""
    h = hashlib.sha256()
    for f in dataclasses.fields(realization):
        h.update(np.ascontiguousarray(getattr(realization, f.name)).tobytes())
    return h.hexdigest()[:16]


@dataclass
class TrialRecord:
    trial_index: int
    realization_hash: str
    solutions: dict[tuple[str, str], Solution]  # keyed by (scheme, problem)


def run_single_trial(
    config: SystemConfig,
    curve: EfficiencyCurve,
    sweep_index: int,
    trial_index: int,
) -> TrialRecord:
    rng = trial_rng(config.seed, sweep_index, trial_index)
    placement = sample_placement(config, rng)
    realization = assign_user_roles(sample_channels(placement, config, rng))
    params = derive_params(realization, config)
    params_single = no_das_params(realization, config)
    solutions: dict[tuple[str, str], Solution] = {}
    for problem in PROBLEMS:
        if problem == PROBLEM_MAX_SUM:
            solutions[(SCHEME_DAS_NOMA, problem)] = solve_maxsum(params, config, curve)
        else:
            solutions[(SCHEME_DAS_NOMA, problem)] = solve_maxmin(params, config, curve)
        solutions[(SCHEME_NOMA_ONLY, problem)] = solve_noma_only(
            params_single, config, curve, problem
        )
        solutions[(SCHEME_DAS_OMA, problem)] = solve_oma_das(
            params, config, curve, problem
        )
    return TrialRecord(trial_index, realization_hash(realization), solutions)


@dataclass(frozen=True)
class AggregateStats:
    """One CSV row: a (power, scheme, problem) cell averaged over trials."""

    problem: str
    scheme: str
    power_dbm: float
    mean_objective_bpshz: float
    outage_prob: float
    mean_alpha1: float
    mean_alpha2: float
    mean_e1_w: float
    mean_e2_w: float
    num_trials: int
    num_non_outage: int


def _aggregate(
    problem: str,
    scheme: str,
    power_dbm: float,
    records: list[TrialRecord],
) -> AggregateStats:
    sols = [r.solutions[(scheme, problem)] for r in records]
    objectives = np.array([s.objective for s in sols])
    outage = np.array([s.outage for s in sols])
    ok_sols = [s for s in sols if not s.outage]

    def mean_over_ok(attr: str) -> float:
        if not ok_sols:
            return float("nan")
        return float(np.mean(np.array([getattr(s, attr) for s in ok_sols], dtype=float)))

    return AggregateStats(
        problem=problem,
        scheme=scheme,
        power_dbm=power_dbm,
        mean_objective_bpshz=float(np.mean(objectives)),
        outage_prob=float(np.mean(outage)),
        mean_alpha1=mean_over_ok("alpha1"),
        mean_alpha2=mean_over_ok("alpha2"),
        mean_e1_w=mean_over_ok("e1"),
        mean_e2_w=mean_over_ok("e2"),
        num_trials=len(sols),
        num_non_outage=len(ok_sols),
    )


def _thread_count() -> int:
    raw = os.environ.get("SWIPTDAS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_sweep_point(
    config: SystemConfig,
    curve: EfficiencyCurve,
    sweep_index: int,
    num_trials: int,
    *,
    threads: int | None = None,
) -> list[TrialRecord]:
    """All trials of one sweep point, in trial order regardless of scheduling."""
    threads = _thread_count() if threads is None else threads
    indices = range(num_trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(
                pool.map(
                    lambda t: run_single_trial(config, curve, sweep_index, t), indices
                )
            )
    else:
        records = [run_single_trial(config, curve, sweep_index, t) for t in indices]
    return records


def run_sweep(
    config: SystemConfig,
    *,
    num_trials: int | None = None,
    threads: int | None = None,
    progress=None,
) -> dict[str, list[AggregateStats]]:
    """Full power sweep.  Returns, per problem, one AggregateStats per
    (sweep point, scheme), sweep-major then scheme in fixed order."""
    curve = curve_from_config(config)
    num_trials = config.sweep_num_trials if num_trials is None else num_trials
    out: dict[str, list[AggregateStats]] = {p: [] for p in PROBLEMS}
    for sweep_index, power_dbm in enumerate(config.sweep_powers_dbm()):
        point_config = dataclasses.replace(
            config, total_power_w=dbm_to_watts(power_dbm)
        )
        records = run_sweep_point(
            point_config, curve, sweep_index, num_trials, threads=threads
        )
        for problem in PROBLEMS:
            for scheme in SCHEMES:
                out[problem].append(
                    _aggregate(problem, scheme, power_dbm, records)
                )
        if progress is not None:
            progress(sweep_index, power_dbm)
    return out
