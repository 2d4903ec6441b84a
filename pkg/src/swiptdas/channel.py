"""Cell geometry, imperfect-CSI channel sampling, and solver-facing parameters.

Layout: the serving controller sits at the origin with its remote radio units
equally spaced on a ring.  User 1 is the cell-edge (weak) receiver drawn from
an outer annulus, user 2 the cell-center (strong) receiver drawn from an inner
disk; both are area-uniform.  Interfering regions are copies of the serving
one placed on a wider ring, each contributing its controller plus one active
remote unit per realization.

Fading is Rayleigh with MMSE-style channel estimation: the estimate carries
variance 1 - csi_error_var and the residual error variance csi_error_var shows
up as extra interference proportional to the powers sent over that link.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ConfigError, SystemConfig


def path_loss(distance, exponent):
    """Power attenuation distance**-exponent of a link of the given length in meters."""
    d = np.asarray(distance, dtype=float)
    if np.any(d <= 0.0):
        raise ValueError(f"link distance must be > 0 m, got {distance}")
    out = d ** (-exponent)
    return float(out) if np.isscalar(distance) else out


def _ring_points(radius: float, count: int, center=(0.0, 0.0)) -> np.ndarray:
    angles = 2.0 * np.pi * np.arange(count) / count
    return np.stack([center[0] + radius * np.cos(angles),
                     center[1] + radius * np.sin(angles)], axis=1)


def _uniform_annulus_point(rng, r_lo: float, r_hi: float) -> np.ndarray:
    """Area-uniform draw from the annulus r_lo <= r <= r_hi; two rng draws."""
    u = rng.random()
    r = np.sqrt(r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo))
    theta = 2.0 * np.pi * rng.random()
    return np.array([r * np.cos(theta), r * np.sin(theta)])


@dataclass(frozen=True)
class Placement:
    """Positions of every transmitter and receiver for one realization (meters)."""

    controller_xy: np.ndarray          # (2,)
    rru_xy: np.ndarray                 # (num_rrus, 2)
    user_xy: np.ndarray                # (2, 2); row 0 weak user, row 1 strong user
    interferer_controller_xy: np.ndarray  # (num_interfering_regions, 2)
    interferer_rru_xy: np.ndarray      # (num_interfering_regions, 2) active unit each


def sample_placement(config: SystemConfig, rng: np.random.Generator) -> Placement:
    """Draw one placement.  Draw order is fixed: weak user, strong user,
    then one active-unit index per interfering region."""
    r = config.region_radius
    controller = np.zeros(2)
    rrus = _ring_points(config.rru_ring_radius, config.num_rrus)
    weak = _uniform_annulus_point(
        rng, config.weak_user_norm_radius_lo * r, config.weak_user_norm_radius_hi * r
    )
    strong = _uniform_annulus_point(rng, 0.0, config.strong_user_max_norm_radius * r)
    centers = _ring_points(
        config.interferer_distance_factor * r, config.num_interfering_regions
    )
    if config.num_interfering_regions > 0:
        active = rng.integers(0, config.num_rrus, size=config.num_interfering_regions)
        ring = _ring_points(config.rru_ring_radius, config.num_rrus)
        interferer_rrus = centers + ring[active]
    else:
        interferer_rrus = np.zeros((0, 2))
    return Placement(
        controller_xy=controller,
        rru_xy=rrus,
        user_xy=np.stack([weak, strong]),
        interferer_controller_xy=centers,
        interferer_rru_xy=interferer_rrus,
    )


def _clamped_distance(a: np.ndarray, b: np.ndarray, floor: float):
    """Euclidean distance with a minimum separation to keep path loss bounded."""
    d = np.linalg.norm(a - b, axis=-1)
    return np.maximum(d, floor)


@dataclass(frozen=True)
class ChannelRealization:
    """Path losses and estimated small-scale gains for one placement.

    User axis: index 0 is user 1 (weak), index 1 is user 2 (strong), once
    roles have been assigned.  Gains are the channel estimates; the residual
    estimation error has variance csi_error_var.
    """

    pl_ctrl: np.ndarray            # (2,) controller -> user
    pl_rru: np.ndarray             # (num_rrus, 2) unit -> user
    gain_ctrl: np.ndarray          # (2,) complex estimates
    gain_rru: np.ndarray           # (num_rrus, 2) complex estimates
    inter_pl_ctrl: np.ndarray      # (regions, 2) foreign controller -> user
    inter_pl_rru: np.ndarray       # (regions, 2) foreign active unit -> user
    csi_error_var: float

    def est_gain_ctrl_sq(self) -> np.ndarray:
        """|estimated controller channel|^2 per user, path loss included."""
        return self.pl_ctrl * np.abs(self.gain_ctrl) ** 2

    def est_gain_rru_sq(self) -> np.ndarray:
        """|estimated unit channel|^2, shape (num_rrus, 2)."""
        return self.pl_rru * np.abs(self.gain_rru) ** 2


def sample_channels(
    placement: Placement, config: SystemConfig, rng: np.random.Generator
) -> ChannelRealization:
    """Draw estimated fading gains for every in-region link of a placement.

    Draw order is fixed: one (num_rrus + 1, 2) block of real parts, then the
    matching block of imaginary parts; row 0 is the controller.
    """
    if not 0.0 <= config.csi_error_var < 1.0:
        raise ConfigError(
            f"csi_error_var must be in [0, 1), got {config.csi_error_var}"
        )
    beta = config.path_loss_exponent
    floor = config.min_link_distance
    users = placement.user_xy
    pl_ctrl = path_loss(
        _clamped_distance(placement.controller_xy, users, floor), beta
    )
    pl_rru = path_loss(
        _clamped_distance(placement.rru_xy[:, None, :], users[None, :, :], floor), beta
    )
    inter_pl_ctrl = path_loss(
        _clamped_distance(
            placement.interferer_controller_xy[:, None, :], users[None, :, :], floor
        ),
        beta,
    )
    inter_pl_rru = path_loss(
        _clamped_distance(
            placement.interferer_rru_xy[:, None, :], users[None, :, :], floor
        ),
        beta,
    )
    scale = np.sqrt((1.0 - config.csi_error_var) / 2.0)
    re = rng.standard_normal((config.num_rrus + 1, 2))
    im = rng.standard_normal((config.num_rrus + 1, 2))
    gains = scale * (re + 1j * im)
    return ChannelRealization(
        pl_ctrl=pl_ctrl,
        pl_rru=pl_rru,
        gain_ctrl=gains[0],
        gain_rru=gains[1:],
        inter_pl_ctrl=inter_pl_ctrl,
        inter_pl_rru=inter_pl_rru,
        csi_error_var=config.csi_error_var,
    )


def assign_user_roles(realization: ChannelRealization) -> ChannelRealization:
    """Relabel users so user 1 has the weaker estimated controller link."""
    g = realization.est_gain_ctrl_sq()
    if g[0] <= g[1]:
        return realization
    flip = slice(None, None, -1)
    return ChannelRealization(
        pl_ctrl=realization.pl_ctrl[flip].copy(),
        pl_rru=realization.pl_rru[:, flip].copy(),
        gain_ctrl=realization.gain_ctrl[flip].copy(),
        gain_rru=realization.gain_rru[:, flip].copy(),
        inter_pl_ctrl=realization.inter_pl_ctrl[:, flip].copy(),
        inter_pl_rru=realization.inter_pl_rru[:, flip].copy(),
        csi_error_var=realization.csi_error_var,
    )


def select_rru(realization: ChannelRealization) -> int:
    """1-based index of the unit with the best estimated link to user 1.

    Ties go to the lowest index.
    """
    return int(np.argmax(realization.est_gain_rru_sq()[:, 0])) + 1


def interference_variance(
    realization: ChannelRealization, user: int, p_ctrl: float, p_rru: float
) -> float:
    """Average foreign-region power at a user: sum over regions of the
    controller term at p_ctrl plus the active-unit term at p_rru."""
    j = user - 1
    return float(
        np.sum(realization.inter_pl_ctrl[:, j] * p_ctrl)
        + np.sum(realization.inter_pl_rru[:, j] * p_rru)
    )


@dataclass(frozen=True)
class DerivedParams:
    """Everything the power-allocation solvers need about one realization.

    All powers in Watts; gains dimensionless.  The "weak" user is user 1 (the
    one decoded first under superposition), the "strong" user is user 2.

    eff_noise_*       total noise-plus-foreign-interference power normalized by
                      the user's estimated controller gain.
    rru_gain_ratio_*  estimated serving-unit gain over estimated controller gain.
    err_power_*       estimation-error interference (normalized the same way)
                      at the configured controller and unit powers.
    err_per_ctrl_w_*  that interference per Watt of controller power, so
                      err_power = err_per_ctrl_w * p_ctrl + err_per_rru_w * p_rru.
    """

    gain_ctrl_weak: float
    gain_ctrl_strong: float
    gain_rru_weak: float
    gain_rru_strong: float
    eff_noise_weak: float
    eff_noise_strong: float
    rru_gain_ratio_weak: float
    rru_gain_ratio_strong: float
    err_power_weak: float
    err_power_strong: float
    err_per_ctrl_w_weak: float
    err_per_ctrl_w_strong: float
    err_per_rru_w_weak: float
    err_per_rru_w_strong: float
    inter_var_weak: float
    inter_var_strong: float
    noise_var: float
    p_ctrl: float
    p_rru: float
    rru_index: int

    def as_dict(self) -> dict:
        from dataclasses import asdict

        return asdict(self)


def derive_params(
    realization: ChannelRealization,
    config: SystemConfig,
    *,
    p_ctrl: float | None = None,
    p_rru: float | None = None,
    rru_index: int | None = None,
) -> DerivedParams:
    """Collapse a realization into the scalars the solvers consume.

    Requires roles already assigned (user 1 no stronger than user 2 through
    the controller).  Defaults to the configured power split and the best
    serving unit; pass p_ctrl/p_rru explicitly for single-site variants.
    """
    g_ctrl = realization.est_gain_ctrl_sq()
    if g_ctrl[0] > g_ctrl[1]:
        raise ValueError("user roles not assigned: user 1 must be the weaker one")
    if np.any(g_ctrl <= 0.0):
        raise ValueError("estimated controller gain is zero; realization unusable")
    if p_ctrl is None:
        p_ctrl = config.p_ctrl
    if p_rru is None:
        p_rru = config.p_rru
    if rru_index is None:
        rru_index = select_rru(realization)
    q = rru_index - 1
    g_rru = realization.est_gain_rru_sq()[q]
    noise_var = config.noise_var_w()
    sigma_e = realization.csi_error_var
    inter = [
        interference_variance(realization, user, p_ctrl, p_rru) for user in (1, 2)
    ]
    err_ctrl = sigma_e * realization.pl_ctrl / g_ctrl
    err_rru = sigma_e * realization.pl_rru[q] / g_ctrl
    return DerivedParams(
        gain_ctrl_weak=float(g_ctrl[0]),
        gain_ctrl_strong=float(g_ctrl[1]),
        gain_rru_weak=float(g_rru[0]),
        gain_rru_strong=float(g_rru[1]),
        eff_noise_weak=float((inter[0] + noise_var) / g_ctrl[0]),
        eff_noise_strong=float((inter[1] + noise_var) / g_ctrl[1]),
        rru_gain_ratio_weak=float(g_rru[0] / g_ctrl[0]),
        rru_gain_ratio_strong=float(g_rru[1] / g_ctrl[1]),
        err_power_weak=float(err_ctrl[0] * p_ctrl + err_rru[0] * p_rru),
        err_power_strong=float(err_ctrl[1] * p_ctrl + err_rru[1] * p_rru),
        err_per_ctrl_w_weak=float(err_ctrl[0]),
        err_per_ctrl_w_strong=float(err_ctrl[1]),
        err_per_rru_w_weak=float(err_rru[0]),
        err_per_rru_w_strong=float(err_rru[1]),
        inter_var_weak=inter[0],
        inter_var_strong=inter[1],
        noise_var=noise_var,
        p_ctrl=float(p_ctrl),
        p_rru=float(p_rru),
        rru_index=int(rru_index),
    )


def no_das_params(realization: ChannelRealization, config: SystemConfig) -> DerivedParams:
    """Parameters for the single-site variant: the whole budget at the
    controller, nothing at the remote units (here or in foreign regions)."""
    return derive_params(realization, config, p_ctrl=config.total_power_w, p_rru=0.0)
