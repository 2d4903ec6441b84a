"""Benchmark the compiled argmax kernels against the numpy fallback.

Builds the same rate surfaces the grid-search oracle feeds to the kernels
(realistic values, realistic feasibility masks) and times both
implementations of each kernel over a range of grid sizes.  Run from the
repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 101 201 401 --repeats 7
"""

import argparse
import statistics
import time
from dataclasses import replace

import numpy as np

from swiptdas import _kernels
from swiptdas.channel import assign_user_roles, derive_params, sample_channels, sample_placement
from swiptdas.config import SystemConfig, dbm_to_watts
from swiptdas.efficiency import curve_from_config
from swiptdas.montecarlo import trial_rng
from swiptdas.oracle import _harvest_feasible, _rate_matrices
from swiptdas.rates import noma_rate_model

try:
    import numba
except ImportError:
    numba = None


def build_workload(config: SystemConfig, n: int):
    """Surfaces of the first drawn realization whose energy masks keep most
    of the grid alive; a starved mask would let the kernels skip the scan."""
    curve = curve_from_config(config)
    alphas = np.linspace(0.0, 1.0, n)
    for trial in range(1000):
        rng = trial_rng(config.seed, 0, trial)
        placement = sample_placement(config, rng)
        real = assign_user_roles(sample_channels(placement, config, rng))
        params = derive_params(real, config)
        efeas1 = _harvest_feasible(alphas, params, curve, config.e_min_user1_w, 1)
        efeas2 = _harvest_feasible(alphas, params, curve, config.e_min_user2_w, 2)
        if efeas1.mean() > 0.5 and efeas2.mean() > 0.5:
            break
    else:
        raise RuntimeError("no dense-mask realization found")
    model = noma_rate_model(params)
    p2s = np.linspace(0.0, params.p_ctrl, n)
    z1, z2, r2 = _rate_matrices(model, alphas, p2s)
    return z1, z2, r2, efeas1, efeas2


def time_call(fn, args, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[101, 201, 301])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    config = replace(SystemConfig(), total_power_w=dbm_to_watts(46.0))
    if numba is None:
        print("numba not importable: timing the numpy fallback only")
        compiled = {}
    else:
        jit = numba.njit(cache=True, nogil=True)
        compiled = {
            "max-sum": jit(_kernels._maxsum_best_loops),
            "max-min": jit(_kernels._maxmin_best_loops),
        }
    fallback = {
        "max-sum": _kernels._maxsum_best_numpy,
        "max-min": _kernels._maxmin_best_numpy,
    }
    floors = {"max-sum": config.r_min_bpshz, "max-min": config.r_sic_bpshz}

    header = f"{'grid':>9} {'kernel':>8} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        z1, z2, r2, efeas1, efeas2 = build_workload(config, n)
        for problem in ("max-sum", "max-min"):
            call_args = (z1, z2, r2, efeas1, efeas2, floors[problem])
            t_np = time_call(fallback[problem], call_args, args.repeats)
            if problem in compiled:
                compiled[problem](*call_args)  # warm the JIT outside the timer
                t_nb = time_call(compiled[problem], call_args, args.repeats)
                if compiled[problem](*call_args) != fallback[problem](*call_args):
                    raise AssertionError(f"kernel mismatch on {problem} at n={n}")
                print(
                    f"{n:>4}x{n:<4} {problem:>8} {t_nb * 1e3:>10.2f}"
                    f" {t_np * 1e3:>10.2f} {t_np / t_nb:>7.1f}x"
                )
            else:
                print(f"{n:>4}x{n:<4} {problem:>8} {'-':>10} {t_np * 1e3:>10.2f} {'-':>8}")


if __name__ == "__main__":
    main()
