"""Shared fixtures and the hand-built parameter factory used across tests."""

import dataclasses

import numpy as np
import pytest

from swiptdas.channel import (
    DerivedParams,
    assign_user_roles,
    derive_params,
    sample_channels,
    sample_placement,
)
from swiptdas.config import SystemConfig
from swiptdas.efficiency import EfficiencyCurve, default_curve


def make_params(
    u1=1.0,
    u2=1.0,
    v1=0.0,
    v2=0.0,
    pe1=0.0,
    pe2=0.0,
    pm=10.0,
    pr=0.0,
    g0_weak=1.0,
    g0_strong=1.0,
    noise_var=5e-6,
) -> DerivedParams:
    """DerivedParams with the solver-facing scalars pinned directly.

    The per-Watt error decompositions are chosen consistent with pe at the
    given (pm, pr): the controller carries all of it when pm > 0.
    """
    err_c1 = pe1 / pm if pm > 0 else 0.0
    err_c2 = pe2 / pm if pm > 0 else 0.0
    return DerivedParams(
        gain_ctrl_weak=g0_weak,
        gain_ctrl_strong=g0_strong,
        gain_rru_weak=v1 * g0_weak,
        gain_rru_strong=v2 * g0_strong,
        eff_noise_weak=u1,
        eff_noise_strong=u2,
        rru_gain_ratio_weak=v1,
        rru_gain_ratio_strong=v2,
        err_power_weak=pe1,
        err_power_strong=pe2,
        err_per_ctrl_w_weak=err_c1,
        err_per_ctrl_w_strong=err_c2,
        err_per_rru_w_weak=0.0,
        err_per_rru_w_strong=0.0,
        inter_var_weak=u1 * g0_weak - noise_var,
        inter_var_strong=u2 * g0_strong - noise_var,
        noise_var=noise_var,
        p_ctrl=pm,
        p_rru=pr,
        rru_index=1,
    )


def constant_curve(eta: float) -> EfficiencyCurve:
    return EfficiencyCurve.from_knots([(1e-9, eta), (1e3, eta)])


def draw_params(config: SystemConfig, rng: np.random.Generator) -> DerivedParams:
    """One realization through the full sampling pipeline."""
    placement = sample_placement(config, rng)
    realization = assign_user_roles(sample_channels(placement, config, rng))
    return derive_params(realization, config)


@pytest.fixture(scope="session")
def default_config() -> SystemConfig:
    cfg = SystemConfig()
    cfg.validate()
    return cfg


@pytest.fixture(scope="session")
def curve() -> EfficiencyCurve:
    return default_curve()


@pytest.fixture()
def fixture_config(default_config) -> SystemConfig:
    """Config matching the hand-derived solver fixtures: rate floors active,
    harvest floors off (so both splits sit at 1)."""
    return dataclasses.replace(
        default_config, e_min_user1_w=0.0, e_min_user2_w=0.0
    )
