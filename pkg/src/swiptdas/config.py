"""System configuration: scalar parameters, validation, and config-file loading.

Config files are INI-style with sections; transmit and harvest power levels
are given in dBm there and converted to Watts at load time.  A resolved
configuration can also be loaded back from the JSON sidecar written next to
sweep results (all values already in SI units).
"""

from __future__ import annotations

import configparser
import dataclasses
import json
import math
from dataclasses import dataclass

from . import efficiency


class ConfigError(ValueError):
    """A configuration value violates an invariant."""


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    if watts <= 0.0:
        raise ValueError(f"cannot express non-positive power {watts} W in dBm")
    return 10.0 * math.log10(watts) + 30.0


@dataclass(frozen=True)
class SystemConfig:
    """All scalar parameters of the cell model, the solvers, and the sweep."""

    # geometry
    num_rrus: int = 6
    num_interfering_regions: int = 6
    region_radius: float = 20.0
    rru_local_radius: float = 20.0 / 3.0
    rru_ring_radius: float = 40.0 / 3.0
    interferer_distance_factor: float = 2.0
    min_link_distance: float = 0.5
    strong_user_max_norm_radius: float = 0.3
    weak_user_norm_radius_lo: float = 0.8
    weak_user_norm_radius_hi: float = 1.0

    # power and channel
    path_loss_exponent: float = 2.5
    bandwidth_hz: float = 5e6
    noise_density_dbm_hz: float = -90.0
    total_power_w: float = dbm_to_watts(43.0)
    controller_power_ratio: float = 0.625
    csi_error_var: float = 0.001

    # constraints
    r_min_bpshz: float = 1.0
    r_sic_bpshz: float = 0.5
    e_min_user1_w: float = 0.01
    e_min_user2_w: float = 0.01
    efficiency_curve_knots: tuple[tuple[float, float], ...] | None = None

    # solver and oracle
    grid_points_alpha: int = 201
    grid_points_p2: int = 201
    oma_grid_points_alpha: int = 41
    oma_grid_points_p2: int = 41
    bisection_tol: float = 1e-9
    seed: int = 123456789

    # sweep
    sweep_start_dbm: float = 20.0
    sweep_stop_dbm: float = 46.0
    sweep_step_db: float = 2.0
    sweep_num_trials: int = 2000

    @property
    def p_ctrl(self) -> float:
        """Controller power budget (the fraction of the total kept centrally)."""
        return self.controller_power_ratio * self.total_power_w

    @property
    def p_rru(self) -> float:
        """Per-RRU power budget; the remainder is split equally among the RRUs."""
        return (self.total_power_w - self.p_ctrl) / self.num_rrus

    def noise_var_w(self) -> float:
        """Receiver noise power over the full band, in Watts."""
        return dbm_to_watts(self.noise_density_dbm_hz) * self.bandwidth_hz

    def sweep_powers_dbm(self) -> list[float]:
        powers = []
        p = self.sweep_start_dbm
        while p <= self.sweep_stop_dbm + 1e-9:
            powers.append(p)
            p += self.sweep_step_db
        return powers

    def validate(self) -> None:
        """Raise ConfigError naming the offending field on any violated invariant."""
        if self.num_rrus < 1:
            raise ConfigError(f"num_rrus must be >= 1, got {self.num_rrus}")
        if self.num_interfering_regions < 0:
            raise ConfigError(
                f"num_interfering_regions must be >= 0, got {self.num_interfering_regions}"
            )
        if self.region_radius <= 0.0:
            raise ConfigError(f"region_radius must be > 0, got {self.region_radius}")
        if not 0.0 < self.rru_local_radius < self.region_radius:
            raise ConfigError(
                f"rru_local_radius must lie in (0, region_radius), got {self.rru_local_radius}"
            )
        if self.rru_ring_radius <= 0.0:
            raise ConfigError(f"rru_ring_radius must be > 0, got {self.rru_ring_radius}")
        if self.interferer_distance_factor <= 0.0:
            raise ConfigError(
                f"interferer_distance_factor must be > 0, got {self.interferer_distance_factor}"
            )
        if self.min_link_distance <= 0.0:
            raise ConfigError(f"min_link_distance must be > 0, got {self.min_link_distance}")
        if self.path_loss_exponent <= 0.0:
            raise ConfigError(
                f"path_loss_exponent must be > 0, got {self.path_loss_exponent}"
            )
        if self.bandwidth_hz <= 0.0:
            raise ConfigError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if self.total_power_w <= 0.0:
            raise ConfigError(f"total_power_w must be > 0, got {self.total_power_w}")
        if not 0.0 < self.controller_power_ratio <= 1.0:
            raise ConfigError(
                f"controller_power_ratio must be in (0, 1], got {self.controller_power_ratio}"
            )
        if not 0.0 <= self.csi_error_var < 1.0:
            raise ConfigError(
                f"csi_error_var must be in [0, 1), got {self.csi_error_var}"
            )
        if self.r_min_bpshz < 0.0:
            raise ConfigError(f"r_min_bpshz must be >= 0, got {self.r_min_bpshz}")
        if self.r_sic_bpshz < 0.0:
            raise ConfigError(f"r_sic_bpshz must be >= 0, got {self.r_sic_bpshz}")
        if self.e_min_user1_w < 0.0:
            raise ConfigError(f"e_min_user1_w must be >= 0, got {self.e_min_user1_w}")
        if self.e_min_user2_w < 0.0:
            raise ConfigError(f"e_min_user2_w must be >= 0, got {self.e_min_user2_w}")
        if not (
            0.0
            <= self.strong_user_max_norm_radius
            < self.weak_user_norm_radius_lo
            < self.weak_user_norm_radius_hi
            <= 1.0
        ):
            raise ConfigError(
                "user placement radii must satisfy 0 <= strong_user_max_norm_radius"
                " < weak_user_norm_radius_lo < weak_user_norm_radius_hi <= 1, got "
                f"{self.strong_user_max_norm_radius}, {self.weak_user_norm_radius_lo}, "
                f"{self.weak_user_norm_radius_hi}"
            )
        for name in ("grid_points_alpha", "grid_points_p2",
                     "oma_grid_points_alpha", "oma_grid_points_p2"):
            if getattr(self, name) < 2:
                raise ConfigError(f"{name} must be >= 2, got {getattr(self, name)}")
        if self.bisection_tol <= 0.0:
            raise ConfigError(f"bisection_tol must be > 0, got {self.bisection_tol}")
        if self.sweep_step_db <= 0.0:
            raise ConfigError(f"sweep_step_db must be > 0, got {self.sweep_step_db}")
        if self.sweep_num_trials < 1:
            raise ConfigError(f"sweep_num_trials must be >= 1, got {self.sweep_num_trials}")
        if self.efficiency_curve_knots is not None:
            try:
                efficiency.EfficiencyCurve.from_knots(self.efficiency_curve_knots)
            except ValueError as exc:
                raise ConfigError(f"efficiency_curve_knots: {exc}") from exc
        budget = self.p_ctrl + self.num_rrus * self.p_rru
        if abs(budget - self.total_power_w) > 1e-9 * self.total_power_w:
            raise ConfigError("power split does not add up to total_power_w")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        if d["efficiency_curve_knots"] is not None:
            d["efficiency_curve_knots"] = [list(k) for k in d["efficiency_curve_knots"]]
        return d


_INT_FIELDS = {
    "num_rrus", "num_interfering_regions", "grid_points_alpha", "grid_points_p2",
    "oma_grid_points_alpha", "oma_grid_points_p2", "seed", "sweep_num_trials",
}

# (section, key) -> (field name, converter); dBm keys convert to Watts.
_INI_SCHEMA: dict[tuple[str, str], tuple[str, str]] = {
    ("geometry", "num_rrus"): ("num_rrus", "int"),
    ("geometry", "num_interfering_regions"): ("num_interfering_regions", "int"),
    ("geometry", "region_radius_m"): ("region_radius", "float"),
    ("geometry", "rru_local_radius_m"): ("rru_local_radius", "float"),
    ("geometry", "rru_ring_radius_m"): ("rru_ring_radius", "float"),
    ("geometry", "interferer_distance_factor"): ("interferer_distance_factor", "float"),
    ("geometry", "min_link_distance_m"): ("min_link_distance", "float"),
    ("geometry", "strong_user_max_norm_radius"): ("strong_user_max_norm_radius", "float"),
    ("geometry", "weak_user_norm_radius_lo"): ("weak_user_norm_radius_lo", "float"),
    ("geometry", "weak_user_norm_radius_hi"): ("weak_user_norm_radius_hi", "float"),
    ("power", "total_power_dbm"): ("total_power_w", "dbm"),
    ("power", "controller_power_ratio"): ("controller_power_ratio", "float"),
    ("power", "path_loss_exponent"): ("path_loss_exponent", "float"),
    ("power", "bandwidth_hz"): ("bandwidth_hz", "float"),
    ("power", "noise_density_dbm_hz"): ("noise_density_dbm_hz", "float"),
    ("power", "csi_error_var"): ("csi_error_var", "float"),
    ("constraints", "r_min_bpshz"): ("r_min_bpshz", "float"),
    ("constraints", "r_sic_bpshz"): ("r_sic_bpshz", "float"),
    ("constraints", "e_min_user1_dbm"): ("e_min_user1_w", "dbm"),
    ("constraints", "e_min_user2_dbm"): ("e_min_user2_w", "dbm"),
    ("constraints", "efficiency_curve_file"): ("efficiency_curve_knots", "curve"),
    ("solver", "grid_points_alpha"): ("grid_points_alpha", "int"),
    ("solver", "grid_points_p2"): ("grid_points_p2", "int"),
    ("solver", "oma_grid_points_alpha"): ("oma_grid_points_alpha", "int"),
    ("solver", "oma_grid_points_p2"): ("oma_grid_points_p2", "int"),
    ("solver", "bisection_tol_w"): ("bisection_tol", "float"),
    ("solver", "seed"): ("seed", "int"),
    ("sweep", "power_start_dbm"): ("sweep_start_dbm", "float"),
    ("sweep", "power_stop_dbm"): ("sweep_stop_dbm", "float"),
    ("sweep", "power_step_db"): ("sweep_step_db", "float"),
    ("sweep", "num_trials"): ("sweep_num_trials", "int"),
}


def _convert(kind: str, raw: str, where: str):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "dbm":
            return dbm_to_watts(float(raw))
        if kind == "curve":
            return efficiency.load_curve(raw).knots()
    except ConfigError:
        raise
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad value for {where}: {exc}") from exc
    raise AssertionError(kind)


def _load_ini(path: str) -> SystemConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    overrides = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            try:
                field, kind = _INI_SCHEMA[(section, key)]
            except KeyError:
                raise ConfigError(f"unknown config key [{section}] {key}") from None
            overrides[field] = _convert(kind, raw, f"[{section}] {key}")
    return SystemConfig(**overrides)


def _load_json(path: str) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    known = {f.name for f in dataclasses.fields(SystemConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys in {path}: {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key == "efficiency_curve_knots":
            kwargs[key] = None if value is None else tuple(
                (float(p), float(e)) for p, e in value
            )
        elif key in _INT_FIELDS:
            kwargs[key] = int(value)
        else:
            kwargs[key] = float(value)
    return SystemConfig(**kwargs)


def load_config(path: str) -> SystemConfig:
    """Load and validate a configuration from an INI file or a JSON sidecar."""
    try:
        if str(path).endswith(".json"):
            config = _load_json(path)
        else:
            config = _load_ini(path)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    config.validate()
    return config
