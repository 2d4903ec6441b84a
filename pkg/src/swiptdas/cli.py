"""Command-line interface: power sweeps, closed-form validation, single trials.

Exit codes: 0 success, 1 validation failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .channel import (
    assign_user_roles,
    derive_params,
    no_das_params,
    sample_channels,
    sample_placement,
)
from .config import ConfigError, load_config
from .efficiency import curve_from_config
from .montecarlo import (
    PROBLEMS,
    SCHEMES,
    AggregateStats,
    run_single_trial,
    run_sweep,
    trial_rng,
)
from .validation import validate_closed_forms

CSV_COLUMNS = (
    "power_dbm",
    "scheme",
    "mean_objective_bpshz",
    "outage_prob",
    "mean_alpha1",
    "mean_alpha2",
    "mean_e1_w",
    "mean_e2_w",
    "num_trials",
    "num_non_outage",
)

_FLOAT_FORMAT = "%.9g"


def _fmt(value) -> str:
    if isinstance(value, float):
        return _FLOAT_FORMAT % value
    return str(value)


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_sweep_csv(path: str, rows: list[AggregateStats]) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(
            ",".join(
                (
                    _fmt(row.power_dbm),
                    row.scheme,
                    _fmt(row.mean_objective_bpshz),
                    _fmt(row.outage_prob),
                    _fmt(row.mean_alpha1),
                    _fmt(row.mean_alpha2),
                    _fmt(row.mean_e1_w),
                    _fmt(row.mean_e2_w),
                    str(row.num_trials),
                    str(row.num_non_outage),
                )
            )
        )
    _atomic_write(path, "\n".join(lines) + "\n")


def write_sidecar(path: str, config) -> None:
    payload = {
        "config": config.to_dict(),
        "csv_columns": list(CSV_COLUMNS),
        "problems": list(PROBLEMS),
        "schemes": list(SCHEMES),
        "float_format": _FLOAT_FORMAT,
        "conventions": {
            "outage_objective": (
                "outage trials count as zero in mean_objective_bpshz"
            ),
            "non_outage_means": (
                "mean_alpha1/2 and mean_e1/2_w average non-outage trials only;"
                " nan when every trial of a cell is in outage"
            ),
        },
    }
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def sweep_csv_path(out_dir: str, problem: str) -> str:
    return os.path.join(out_dir, f"sweep_{problem}.csv")


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    if args.trials is not None:
        config = dataclasses.replace(config, sweep_num_trials=args.trials)
        config.validate()
    os.makedirs(args.out, exist_ok=True)

    def progress(index, power_dbm):
        print(f"sweep point {index} ({power_dbm:g} dBm) done", file=sys.stderr)

    results = run_sweep(config, threads=args.threads, progress=progress)
    for problem in PROBLEMS:
        write_sweep_csv(sweep_csv_path(args.out, problem), results[problem])
    write_sidecar(os.path.join(args.out, "config.json"), config)
    names = ", ".join(f"sweep_{p}.csv" for p in PROBLEMS)
    print(f"wrote {names} and config.json to {args.out}")
    return 0


def cmd_validate(args) -> int:
    config = load_config(args.config)
    if config.grid_points_alpha < 51 or config.grid_points_p2 < 51:
        print(
            "error: validate needs grid_points_alpha and grid_points_p2 >= 51"
            " for a trustworthy reference grid",
            file=sys.stderr,
        )
        return 2
    if args.instances < 1:
        print("error: --instances must be >= 1", file=sys.stderr)
        return 2
    reports = validate_closed_forms(config, args.instances)
    failed = False
    for problem, report in reports.items():
        status = "pass" if report.passed else "FAIL"
        print(
            f"{problem}: {status}; max objective gap {report.max_gap:.3g} bit/s/Hz"
            f" over {report.num_compared} compared instances,"
            f" {report.num_outage_both} outage on both,"
            f" {report.num_excluded_narrow} excluded as boundary-narrow,"
            f" {len(report.disagreements)} disagreements"
        )
        for d in report.disagreements[:10]:
            print(f"  instance {d.instance}: {d.kind}: {d.detail}")
        failed = failed or not report.passed
    return 1 if failed else 0


def cmd_single(args) -> int:
    config = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.perfect_csi:
        overrides["csi_error_var"] = 0.0
    if overrides:
        config = dataclasses.replace(config, **overrides)
        config.validate()
    curve = curve_from_config(config)
    record = run_single_trial(config, curve, 0, args.trial)
    rng = trial_rng(config.seed, 0, args.trial)
    placement = sample_placement(config, rng)
    realization = assign_user_roles(sample_channels(placement, config, rng))
    params = derive_params(realization, config)
    params_single = no_das_params(realization, config)
    solutions: dict[str, dict[str, dict]] = {s: {} for s in SCHEMES}
    for (scheme, problem), sol in record.solutions.items():
        solutions[scheme][problem] = sol.as_dict()
    payload = {
        "trial_index": args.trial,
        "seed": config.seed,
        "realization_hash": record.realization_hash,
        "derived_params": params.as_dict(),
        "derived_params_single_site": params_single.as_dict(),
        "solutions": solutions,
    }
    print(json.dumps(payload, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swiptdas",
        description=(
            "Optimal receive power splitting and superposition power"
            " allocation for a two-user distributed-antenna cell with"
            " wireless energy harvesting"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep", help="Monte-Carlo power sweep; writes one CSV per objective"
    )
    p_sweep.add_argument("config", help="INI config file or JSON sidecar")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument(
        "--trials", type=int, default=None, help="override trials per sweep point"
    )
    p_sweep.add_argument(
        "--threads", type=int, default=None,
        help="worker threads per sweep point (default SWIPTDAS_THREADS or 1)",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_val = sub.add_parser(
        "validate",
        help="cross-check the closed-form allocators against grid search",
    )
    p_val.add_argument("config", help="INI config file or JSON sidecar")
    p_val.add_argument("--instances", type=int, default=200)
    p_val.set_defaults(func=cmd_validate)

    p_single = sub.add_parser(
        "single", help="solve one realization and dump everything as JSON"
    )
    p_single.add_argument("config", help="INI config file or JSON sidecar")
    p_single.add_argument("--seed", type=int, default=None)
    p_single.add_argument("--trial", type=int, default=0)
    p_single.add_argument(
        "--perfect-csi", action="store_true",
        help="solve with the estimation-error variance forced to zero",
    )
    p_single.set_defaults(func=cmd_single)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
