"""CSV loading and the four standard figures.

Two figures per problem: mean objective against transmit power (one line
per scheme) and mean splitting ratios against transmit power (two lines per
scheme, one per user).  Styling is pinned in a table so reruns are visually
stable; the power axis is linear in dBm.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

PROBLEMS = ("max-sum", "max-min")
SCHEME_ORDER = ("das-noma", "noma-only", "das-oma")

EXPECTED_COLUMNS = (
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

# one marker/color pair per scheme; user 1 solid, user 2 dashed
STYLE = {
    "das-noma": {"marker": "o", "color": "C0"},
    "noma-only": {"marker": "s", "color": "C1"},
    "das-oma": {"marker": "^", "color": "C2"},
}
FALLBACK_STYLE = {"marker": "x", "color": "C7"}


class SchemaError(ValueError):
    """A sweep CSV does not match the documented schema."""


@dataclass(frozen=True)
class SweepRow:
    power_dbm: float
    scheme: str
    mean_objective_bpshz: float
    mean_alpha1: float
    mean_alpha2: float


def load_sweep_csv(path: str | Path) -> list[SweepRow]:
    """Parse one sweep CSV, enforcing the exact column set."""
    import csv

    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise SchemaError(f"{path.name}: empty file, no header row")
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"{path.name}: missing column(s) {', '.join(missing)}")
        unexpected = [c for c in header if c not in EXPECTED_COLUMNS]
        if unexpected:
            raise SchemaError(
                f"{path.name}: unexpected column(s) {', '.join(unexpected)}"
            )
        rows = []
        for lineno, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise SchemaError(
                    f"{path.name}:{lineno}: {len(record)} fields, expected {len(header)}"
                )
            cell = dict(zip(header, record))
            parsed = {}
            for column in EXPECTED_COLUMNS:
                if column == "scheme":
                    continue
                try:
                    parsed[column] = float(cell[column])
                except ValueError:
                    raise SchemaError(
                        f"{path.name}:{lineno}: column {column} is not numeric:"
                        f" {cell[column]!r}"
                    ) from None
            rows.append(
                SweepRow(
                    power_dbm=parsed["power_dbm"],
                    scheme=cell["scheme"],
                    mean_objective_bpshz=parsed["mean_objective_bpshz"],
                    mean_alpha1=parsed["mean_alpha1"],
                    mean_alpha2=parsed["mean_alpha2"],
                )
            )
    if not rows:
        raise SchemaError(f"{path.name}: no sweep points")
    return rows


def _by_scheme(rows: list[SweepRow]) -> dict[str, list[SweepRow]]:
    grouped: dict[str, list[SweepRow]] = {}
    for row in rows:
        grouped.setdefault(row.scheme, []).append(row)
    for scheme_rows in grouped.values():
        scheme_rows.sort(key=lambda r: r.power_dbm)
    ordered = {s: grouped.pop(s) for s in SCHEME_ORDER if s in grouped}
    ordered.update(grouped)  # unknown tags render last, in file order
    return ordered


def _save_atomic(fig, path: Path, fmt: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    fig.savefig(tmp, format=fmt, dpi=150)
    os.replace(tmp, path)
    plt.close(fig)


def _objective_figure(problem: str, grouped: dict) -> "plt.Figure":
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for scheme, rows in grouped.items():
        style = STYLE.get(scheme, FALLBACK_STYLE)
        ax.plot(
            [r.power_dbm for r in rows],
            [r.mean_objective_bpshz for r in rows],
            label=scheme,
            **style,
        )
    ax.set_xlabel("total transmit power [dBm]")
    ax.set_ylabel("mean objective [bit/s/Hz]")
    ax.set_title(f"{problem}: mean objective vs transmit power")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    return fig


def _alpha_figure(problem: str, grouped: dict) -> "plt.Figure":
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for scheme, rows in grouped.items():
        style = STYLE.get(scheme, FALLBACK_STYLE)
        powers = [r.power_dbm for r in rows]
        ax.plot(
            powers,
            [r.mean_alpha1 for r in rows],
            linestyle="-",
            label=f"{scheme} user 1",
            **style,
        )
        ax.plot(
            powers,
            [r.mean_alpha2 for r in rows],
            linestyle="--",
            label=f"{scheme} user 2",
            **style,
        )
    ax.set_xlabel("total transmit power [dBm]")
    ax.set_ylabel("mean power-splitting ratio")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(f"{problem}: mean splitting ratios vs transmit power")
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def render_figures(csv_dir: str | Path, out_dir: str | Path, fmt: str) -> list[Path]:
    """Render all four figures.  Loads and checks every input before the
    first output file is touched, so a bad input leaves out_dir unchanged."""
    csv_dir = Path(csv_dir)
    data = {}
    for problem in PROBLEMS:
        path = csv_dir / f"sweep_{problem}.csv"
        if not path.exists():
            raise SchemaError(f"{path.name}: not found in {csv_dir}")
        data[problem] = _by_scheme(load_sweep_csv(path))
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for problem, grouped in data.items():
        for stem, build in (("objective", _objective_figure), ("alphas", _alpha_figure)):
            path = out_dir / f"{stem}_{problem}.{fmt}"
            _save_atomic(build(problem, grouped), path, fmt)
            written.append(path)
    return written
