"""Nonlinear harvester model: conversion efficiency as a function of input power.

The efficiency is a piecewise-linear interpolation over (input power, efficiency)
knots, clamped to the end values outside the knot range.  The shipped default
curve is a generic saturating shape for small rectennas, not a fit to any
specific rectifier; supply measured knots via a curve file to override it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_CURVE_KNOTS: tuple[tuple[float, float], ...] = (
    (1e-6, 0.05),
    (1e-5, 0.15),
    (1e-4, 0.30),
    (1e-3, 0.45),
    (1e-2, 0.55),
    (1e-1, 0.60),
)


@dataclass(frozen=True)
class EfficiencyCurve:
    input_powers_w: np.ndarray
    efficiencies: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.input_powers_w, dtype=float)
        e = np.asarray(self.efficiencies, dtype=float)
        if p.ndim != 1 or p.shape != e.shape or p.size < 2:
            raise ValueError("efficiency curve needs two same-length 1-D knot arrays")
        if not np.all(np.diff(p) > 0.0):
            raise ValueError("efficiency curve input powers must be strictly increasing")
        if p[0] < 0.0:
            raise ValueError("efficiency curve input powers must be nonnegative")
        if np.any(e < 0.0) or np.any(e > 1.0):
            raise ValueError("efficiency values must lie in [0, 1]")
        object.__setattr__(self, "input_powers_w", p)
        object.__setattr__(self, "efficiencies", e)

    @classmethod
    def from_knots(cls, knots) -> "EfficiencyCurve":
        knots = list(knots)
        return cls(np.array([k[0] for k in knots], dtype=float),
                   np.array([k[1] for k in knots], dtype=float))

    def knots(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.input_powers_w.tolist(), self.efficiencies.tolist()))

    def __call__(self, input_power_w):
        """Efficiency at the given rectifier input power (clamped at the ends)."""
        return np.interp(input_power_w, self.input_powers_w, self.efficiencies)

    def harvested(self, input_power_w):
        """DC power actually harvested from the given RF input power."""
        return self(input_power_w) * np.asarray(input_power_w, dtype=float)


def default_curve() -> EfficiencyCurve:
    return EfficiencyCurve.from_knots(DEFAULT_CURVE_KNOTS)


def load_curve(path: str) -> EfficiencyCurve:
    """Read a two-column (input power W, efficiency) text file; '#' starts a comment."""
    knots = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected two columns, got {len(parts)}"
                )
            knots.append((float(parts[0]), float(parts[1])))
    if len(knots) < 2:
        raise ValueError(f"{path}: efficiency curve needs at least two knots")
    return EfficiencyCurve.from_knots(knots)


def curve_from_config(config) -> EfficiencyCurve:
    if getattr(config, "efficiency_curve_knots", None) is not None:
        return EfficiencyCurve.from_knots(config.efficiency_curve_knots)
    return default_curve()
