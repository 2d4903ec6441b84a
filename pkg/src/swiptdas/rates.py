"""Achievable rates and harvested power as functions of the split decisions.

Decision variables: alpha1/alpha2 are the fractions of received power each
user routes to its decoder (the remainder feeds the harvester), p2 is the
superposition power spent on the strong user; the weak user gets the rest of
the controller budget.

Every decode in every scheme has the same shape,

    rate = prelog * log2(1 + alpha * S(p2) / (alpha * I(p2) + noise)),

with signal S and self-interference I affine in p2.  RateChannel captures one
such decode; SchemeRateModel bundles the three decodes of a scheme so the
grid-search oracle can treat all schemes uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import DerivedParams
from .efficiency import EfficiencyCurve


@dataclass(frozen=True)
class SplitRates:
    """Rates of one operating point, all in bit/s/Hz.

    decode_weak: the weak user decoding its own stream.
    decode_cross: the strong user decoding the weak user's stream before
    cancellation; +inf when the scheme has no such stage.
    rate_weak is the delivered weak-user rate min(decode_weak, decode_cross);
    rate_strong the strong user's own rate after cancellation.
    """

    decode_weak: float
    decode_cross: float
    rate_strong: float

    @property
    def rate_weak(self) -> float:
        return min(self.decode_weak, self.decode_cross)

    def as_dict(self) -> dict:
        def clean(v):
            return v if math.isfinite(v) else None

        return {
            "decode_weak": clean(self.decode_weak),
            "decode_cross": clean(self.decode_cross),
            "rate_weak": clean(self.rate_weak),
            "rate_strong": clean(self.rate_strong),
        }


def _sinr_rate(prelog, alpha, signal, interference, noise):
    return prelog * np.log2(1.0 + alpha * signal / (alpha * interference + noise))


def compute_rates(alpha1, alpha2, p2, params: DerivedParams) -> SplitRates:
    """Superposition-coding rates with shared-band remote-unit reception."""
    p1 = params.p_ctrl - p2
    z1 = _sinr_rate(
        1.0,
        alpha1,
        p1 + params.rru_gain_ratio_weak * params.p_rru,
        p2 + params.err_power_weak,
        params.eff_noise_weak,
    )
    z2 = _sinr_rate(
        1.0,
        alpha2,
        p1 + params.rru_gain_ratio_strong * params.p_rru,
        p2 + params.err_power_strong,
        params.eff_noise_strong,
    )
    r2 = _sinr_rate(
        1.0, alpha2, p2, params.err_power_strong, params.eff_noise_strong
    )
    return SplitRates(float(z1), float(z2), float(r2))


def rectifier_input_power(alpha, params: DerivedParams, user: int) -> float:
    """RF power entering a user's harvester.  Only in-region signal power
    (including the estimation-error part) is collected; foreign interference
    and thermal noise are not harvestable."""
    if user == 1:
        gain_ctrl, gain_rru, err = (
            params.gain_ctrl_weak, params.gain_rru_weak, params.err_power_weak,
        )
    elif user == 2:
        gain_ctrl, gain_rru, err = (
            params.gain_ctrl_strong, params.gain_rru_strong, params.err_power_strong,
        )
    else:
        raise ValueError(f"user must be 1 or 2, got {user}")
    total = gain_ctrl * (params.p_ctrl + err) + gain_rru * params.p_rru
    return (1.0 - alpha) * total


def harvested_power(alpha, params: DerivedParams, user: int, curve: EfficiencyCurve) -> float:
    rf = rectifier_input_power(alpha, params, user)
    return float(curve.harvested(rf))


@dataclass(frozen=True)
class RateChannel:
    """One decode: rate = prelog*log2(1 + a*(sig_const+sig_slope*p2) /
    (a*(int_const+int_slope*p2) + noise))."""

    prelog: float
    sig_const: float
    sig_slope: float
    int_const: float
    int_slope: float
    noise: float

    def rate(self, alpha, p2):
        if isinstance(alpha, float) and isinstance(p2, float):
            return self.rate_scalar(alpha, p2)
        signal = self.sig_const + self.sig_slope * np.asarray(p2, dtype=float)
        interference = self.int_const + self.int_slope * np.asarray(p2, dtype=float)
        return self.prelog * np.log2(
            1.0 + alpha * signal / (alpha * interference + self.noise)
        )

    def rate_scalar(self, alpha: float, p2: float) -> float:
        signal = self.sig_const + self.sig_slope * p2
        interference = self.int_const + self.int_slope * p2
        return self.prelog * math.log2(
            1.0 + alpha * signal / (alpha * interference + self.noise)
        )


@dataclass(frozen=True)
class SchemeRateModel:
    """The three decodes of a scheme on the common (alpha1, alpha2, p2) box.

    cross is None for schemes without a pre-cancellation decode; its rate is
    then treated as +inf (never the bottleneck, no ordering constraint).
    """

    own_weak: RateChannel
    cross: RateChannel | None
    own_strong: RateChannel

    def rate_tuple(self, alpha1, alpha2, p2) -> SplitRates:
        z1 = float(self.own_weak.rate(alpha1, p2))
        z2 = float(self.cross.rate(alpha2, p2)) if self.cross is not None else math.inf
        r2 = float(self.own_strong.rate(alpha2, p2))
        return SplitRates(z1, z2, r2)


def noma_rate_model(params: DerivedParams) -> SchemeRateModel:
    """Shared-band superposition model; matches compute_rates exactly."""
    own_weak = RateChannel(
        prelog=1.0,
        sig_const=params.p_ctrl + params.rru_gain_ratio_weak * params.p_rru,
        sig_slope=-1.0,
        int_const=params.err_power_weak,
        int_slope=1.0,
        noise=params.eff_noise_weak,
    )
    cross = RateChannel(
        prelog=1.0,
        sig_const=params.p_ctrl + params.rru_gain_ratio_strong * params.p_rru,
        sig_slope=-1.0,
        int_const=params.err_power_strong,
        int_slope=1.0,
        noise=params.eff_noise_strong,
    )
    own_strong = RateChannel(
        prelog=1.0,
        sig_const=0.0,
        sig_slope=1.0,
        int_const=params.err_power_strong,
        int_slope=0.0,
        noise=params.eff_noise_strong,
    )
    return SchemeRateModel(own_weak, cross, own_strong)


def oma_rate_model(params: DerivedParams) -> SchemeRateModel:
    """Orthogonal half-band model on the same power split.

    Each user decodes alone in its half band: half the pre-log, no
    superposition interference, no cross decode.  Noise plus foreign
    interference halves with the bandwidth.  The estimation-error terms keep
    the powers active in each user's own band: controller power p1 (resp. p2)
    plus, for the weak user, the remote-unit power.  Harvesting is unchanged
    (the rectifier is wideband), so energy feasibility matches the
    superposition schemes at equal alpha.
    """
    err_ctrl_1 = params.err_per_ctrl_w_weak
    err_rru_1 = params.err_per_rru_w_weak
    err_ctrl_2 = params.err_per_ctrl_w_strong
    own_weak = RateChannel(
        prelog=0.5,
        sig_const=params.p_ctrl + params.rru_gain_ratio_weak * params.p_rru,
        sig_slope=-1.0,
        int_const=err_ctrl_1 * params.p_ctrl + err_rru_1 * params.p_rru,
        int_slope=-err_ctrl_1,
        noise=params.eff_noise_weak / 2.0,
    )
    own_strong = RateChannel(
        prelog=0.5,
        sig_const=0.0,
        sig_slope=1.0,
        int_const=0.0,
        int_slope=err_ctrl_2,
        noise=params.eff_noise_strong / 2.0,
    )
    return SchemeRateModel(own_weak, None, own_strong)
