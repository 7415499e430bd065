"""TOML run configuration: samples, environments, forcing, solver settings.

A simulation config has four sections. ``[sample]`` describes the soil
(geometry, density, radiative properties, heat capacity), and
``[environment]`` the chamber or planetary setting (pressure, gas,
mode, actuation period). ``[forcing]`` defines the driver, either a
sinusoid or explicit samples. ``[simulation]`` collects solver knobs.
An optional ``[conductivity]`` section overrides the conduction model
constants. Keys carry their unit in the name (period_min, dt_s,
amplitude_K) so files read unambiguously.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .conductivity import GasConductionParams
from .core import (
    CELSIUS_OFFSET,
    EnvironmentConfig,
    Gas,
    Mode,
    SoilSample,
    validate_sample,
)
from .errors import ConfigError
from .simulator import (
    ForcingKind,
    ForcingProfile,
    sinusoidal_flux,
    sinusoidal_heater,
)


def load_toml(path) -> dict:
    p = Path(path)
    try:
        with p.open("rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config {p} is not valid TOML: {exc}") from exc


def _section(cfg: dict, name: str, required: bool = True) -> dict:
    tbl = cfg.get(name)
    if tbl is None:
        if required:
            raise ConfigError(f"missing required config section: [{name}]")
        return {}
    if not isinstance(tbl, dict):
        raise ConfigError(f"config section [{name}] must be a table")
    return tbl


def _req(tbl: dict, section: str, key: str):
    if key not in tbl:
        raise ConfigError(f"missing required config key: {section}.{key}")
    return tbl[key]


def _num(tbl: dict, section: str, key: str, default=None):
    v = tbl.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"config key {section}.{key} must be a number")
    return float(v)


def _req_num(tbl: dict, section: str, key: str) -> float:
    _req(tbl, section, key)
    return _num(tbl, section, key)


def build_sample(cfg: dict) -> SoilSample:
    tbl = _section(cfg, "sample")
    name = tbl.get("name", "sample")
    if "granularity_mm" in tbl:
        g = tbl["granularity_mm"]
        if not isinstance(g, (list, tuple)) or len(g) != 2:
            raise ConfigError("sample.granularity_mm must be [min, max]")
        granularity = (float(g[0]), float(g[1]))
    elif "grain_mm" in tbl:
        gm = _num(tbl, "sample", "grain_mm")
        granularity = (gm, gm)
    else:
        raise ConfigError(
            "missing required config key: sample.granularity_mm (or sample.grain_mm)"
        )
    bin_cm = _req(tbl, "sample", "bin_cm")
    if not isinstance(bin_cm, (list, tuple)) or len(bin_cm) != 3:
        raise ConfigError("sample.bin_cm must be [length, width, depth]")
    sample = SoilSample(
        name=str(name),
        granularity_mm=granularity,
        density_g_ml=_req_num(tbl, "sample", "density_g_ml"),
        bin_cm=tuple(float(v) for v in bin_cm),
        emissivity=_num(tbl, "sample", "emissivity", 1.0),
        albedo=_num(tbl, "sample", "albedo", 0.0),
        prescribed_inertia_tiu=_num(tbl, "sample", "prescribed_inertia_tiu"),
        specific_heat=_num(tbl, "sample", "specific_heat_J_kgK"),
        layer_thickness_m=_num(tbl, "sample", "layer_thickness_m"),
    )
    validate_sample(sample)
    return sample


def build_environment(cfg: dict) -> EnvironmentConfig:
    tbl = _section(cfg, "environment")
    gas_raw = _req(tbl, "environment", "gas")
    try:
        gas = Gas(gas_raw)
    except ValueError:
        options = ", ".join(g.value for g in Gas)
        raise ConfigError(
            f"environment.gas {gas_raw!r} is not one of: {options}"
        ) from None
    mode_raw = tbl.get("mode", Mode.CHAMBER.value)
    try:
        mode = Mode(mode_raw)
    except ValueError:
        options = ", ".join(m.value for m in Mode)
        raise ConfigError(
            f"environment.mode {mode_raw!r} is not one of: {options}"
        ) from None
    period_min = _num(tbl, "environment", "period_min")
    period_s = _num(tbl, "environment", "period_s")
    if (period_min is None) == (period_s is None):
        raise ConfigError(
            "give exactly one of environment.period_min or environment.period_s"
        )
    return EnvironmentConfig(
        pressure_mbar=_req_num(tbl, "environment", "pressure_mbar"),
        gas=gas,
        mode=mode,
        period_s=period_s if period_s is not None else period_min * 60.0,
    )


def build_conduction(cfg: dict) -> tuple[GasConductionParams, float, float]:
    """(gas model params, k_r, k_c) from the optional [conductivity] table."""
    tbl = _section(cfg, "conductivity", required=False)
    k_r = _num(tbl, "conductivity", "k_r", 0.005)
    k_c = _num(tbl, "conductivity", "k_c", 0.010)
    gtbl = tbl.get("gas_model", {})
    if not isinstance(gtbl, dict):
        raise ConfigError("config section [conductivity.gas_model] must be a table")
    sec = "conductivity.gas_model"
    params = GasConductionParams(
        coefficient=_num(gtbl, sec, "coefficient", 0.012),
        pressure_exponent=_num(gtbl, sec, "pressure_exponent", 0.27),
        grain_size_sensitivity=_num(gtbl, sec, "grain_size_sensitivity", 0.11),
        reference_pressure_mbar=_num(gtbl, sec, "reference_pressure_mbar", 1.08e5),
    )
    return params, k_r, k_c


def build_forcing(cfg: dict, env: EnvironmentConfig) -> ForcingProfile:
    tbl = _section(cfg, "forcing")
    default_kind = (
        ForcingKind.HEATER_TEMPERATURE
        if env.mode is Mode.CHAMBER
        else ForcingKind.SHORTWAVE_FLUX
    )
    kind_raw = tbl.get("kind", default_kind.value)
    try:
        kind = ForcingKind(kind_raw)
    except ValueError:
        options = ", ".join(k.value for k in ForcingKind)
        raise ConfigError(
            f"forcing.kind {kind_raw!r} is not one of: {options}"
        ) from None
    if kind is not default_kind:
        raise ConfigError(
            f"forcing.kind {kind.value} does not drive environment.mode "
            f"{env.mode.value}"
        )
    shape = tbl.get("shape", "sinusoid")
    if shape == "sinusoid":
        samples_per_cycle = int(_num(tbl, "forcing", "samples_per_cycle", 512))
        phase = _num(tbl, "forcing", "phase_rad", 0.0)
        if kind is ForcingKind.HEATER_TEMPERATURE:
            mean_k = _req_num(tbl, "forcing", "mean_C") + CELSIUS_OFFSET
            amp = _req_num(tbl, "forcing", "amplitude_K")
            return sinusoidal_heater(
                mean_k, amp, env.period_s, samples_per_cycle, phase
            )
        mean = _req_num(tbl, "forcing", "mean_Wm2")
        amp = _req_num(tbl, "forcing", "amplitude_Wm2")
        return sinusoidal_flux(mean, amp, env.period_s, samples_per_cycle, phase)
    if shape == "samples":
        raw = _req(tbl, "forcing", "samples")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("forcing.samples must be a non-empty list of pairs")
        pairs = []
        for i, entry in enumerate(raw):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise ConfigError(
                    f"forcing.samples[{i}] must be [time_s, value]"
                )
            t, v = float(entry[0]), float(entry[1])
            if kind is ForcingKind.HEATER_TEMPERATURE:
                v += CELSIUS_OFFSET  # sample values are heater Celsius
            pairs.append((t, v))
        return ForcingProfile.from_samples(kind, pairs, env.period_s)
    raise ConfigError(f"forcing.shape {shape!r} is not one of: sinusoid, samples")


@dataclass(frozen=True)
class SimulationSettings:
    cycles: int = 1
    spin_up_cycles: int = 0
    dt_s: float = 2.0
    nodes: int = 100
    depth_factor: float = 5.0
    use_bin_depth: bool = False
    record_depths_m: tuple = ()
    record_every: int = 1
    initial_temperature_k: float = 293.15
    scheme: str = "implicit"
    first_cell_fraction: float = 40.0


def build_settings(cfg: dict) -> SimulationSettings:
    tbl = _section(cfg, "simulation", required=False)
    sec = "simulation"
    depths = tbl.get("record_depth_m", [])
    if isinstance(depths, (int, float)) and not isinstance(depths, bool):
        depths = [depths]
    if not isinstance(depths, (list, tuple)):
        raise ConfigError("simulation.record_depth_m must be a number or list")
    scheme = tbl.get("scheme", "implicit")
    if scheme not in ("implicit", "explicit"):
        raise ConfigError(
            f"simulation.scheme {scheme!r} is not one of: implicit, explicit"
        )
    use_bin = tbl.get("use_bin_depth", False)
    if not isinstance(use_bin, bool):
        raise ConfigError("simulation.use_bin_depth must be true or false")
    return SimulationSettings(
        cycles=int(_num(tbl, sec, "cycles", 1)),
        spin_up_cycles=int(_num(tbl, sec, "spin_up_cycles", 0)),
        dt_s=_num(tbl, sec, "dt_s", 2.0),
        nodes=int(_num(tbl, sec, "nodes", 100)),
        depth_factor=_num(tbl, sec, "depth_factor", 5.0),
        use_bin_depth=use_bin,
        record_depths_m=tuple(float(d) for d in depths),
        record_every=int(_num(tbl, sec, "record_every", 1)),
        initial_temperature_k=_num(tbl, sec, "initial_temperature_C", 20.0)
        + CELSIUS_OFFSET,
        scheme=scheme,
        first_cell_fraction=_num(tbl, sec, "first_cell_fraction", 40.0),
    )


@dataclass(frozen=True)
class SimulationPlan:
    """Everything a simulate run needs, parsed and validated."""

    sample: SoilSample
    environment: EnvironmentConfig
    forcing: ForcingProfile
    settings: SimulationSettings
    gas_params: GasConductionParams = field(default_factory=GasConductionParams)
    k_r: float = 0.005
    k_c: float = 0.010


def load_simulation_plan(path) -> SimulationPlan:
    cfg = load_toml(path)
    sample = build_sample(cfg)
    env = build_environment(cfg)
    gas_params, k_r, k_c = build_conduction(cfg)
    forcing = build_forcing(cfg, env)
    settings = build_settings(cfg)
    return SimulationPlan(
        sample=sample,
        environment=env,
        forcing=forcing,
        settings=settings,
        gas_params=gas_params,
        k_r=k_r,
        k_c=k_c,
    )
