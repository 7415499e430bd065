"""Transient 1-D heat diffusion with a nonlinear radiative surface boundary.

The soil column is discretized as finite volumes on a geometrically
refined grid (finest cells at the surface). Node 0 sits exactly at the
surface and carries no thermal mass: it satisfies the instantaneous
surface energy budget

    chamber:    G = eps*sigma*T_heater^4 - eps*sigma*T_s^4
    planetary:  G = (1 - A)*R_sw        - eps*sigma*T_s^4

coupled to the two-point conductive flux into the first interior cell.
The bottom boundary is zero-flux. Because every internal exchange is a
shared face flux, the discrete column conserves energy exactly: the
change in column heat content over a step equals the boundary flux
times dt, up to the Newton tolerance on the surface node.

Two integrators are provided. The default implicit scheme (backward
Euler, unconditionally stable) resolves the stiff T^4 boundary by
Newton iteration; an explicit FTCS scheme is kept as an independent
cross-check path with the usual step-size bound.

Air convection is neglected: the chamber is an enclosed space with no
wind, and on low-pressure surfaces the term is negligible against
radiation.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.linalg import solve_banded

from .conductivity import GasConductionParams, bulk_conductivity
from .core import Mode, EnvironmentConfig, SoilSample, STEFAN_BOLTZMANN
from .errors import ConfigError, SolverError, StepSizeError, UnitDomainError

MIN_NODES = 8
MIN_DEPTH_SKIN_DEPTHS = 3.0


def skin_depth(k: float, rho_c: float, period_s: float) -> float:
    """e-folding depth of the periodic thermal wave: sqrt(k*P/(pi*rho*c))."""
    if k <= 0.0 or rho_c <= 0.0 or period_s <= 0.0:
        raise UnitDomainError("skin depth needs positive k, rho*c, and period")
    return math.sqrt(k * period_s / (math.pi * rho_c))


@dataclass(frozen=True)
class Thermophysics:
    """Resolved column properties: conductivity, density, specific heat."""

    k: float  # W/(m K)
    rho: float  # kg/m^3
    c: float  # J/(kg K)
    source: str = "explicit"

    @property
    def rho_c(self) -> float:
        return self.rho * self.c

    @property
    def inertia(self) -> float:
        return math.sqrt(self.k * self.rho * self.c)


def resolve_thermophysics(
    soil: SoilSample,
    env: EnvironmentConfig,
    gas_params: GasConductionParams | None = None,
    k_r: float = 0.005,
    k_c: float = 0.010,
) -> Thermophysics:
    """Determine (k, rho, c) for a sample.

    A prescribed inertia pins k = I^2/(rho*c); otherwise k comes from the
    pressure/grain-size conductivity model at the environment pressure.
    Specific heat must be supplied on the sample either way.
    """
    if soil.specific_heat is None:
        raise ConfigError(
            f"sample {soil.name!r}: specific_heat is required to simulate"
        )
    rho = soil.density_kg_m3
    c = soil.specific_heat
    if soil.prescribed_inertia_tiu is not None:
        inertia = soil.prescribed_inertia_tiu
        return Thermophysics(
            k=inertia * inertia / (rho * c), rho=rho, c=c, source="prescribed"
        )
    breakdown = bulk_conductivity(
        env.pressure_mbar,
        soil.mean_grain_mm,
        gas_params or GasConductionParams(),
        k_r=k_r,
        k_c=k_c,
    )
    return Thermophysics(k=breakdown.k_total, rho=rho, c=c, source="conductivity_model")


class ForcingKind(Enum):
    HEATER_TEMPERATURE = "heater_temperature"
    SHORTWAVE_FLUX = "shortwave_flux"


@dataclass(frozen=True)
class ForcingProfile:
    """Time-parameterized driver over one actuation period.

    Values between samples are piecewise-linear; evaluation wraps
    periodically, so a single cycle of samples drives any number of
    simulated cycles. Heater forcing is a temperature in Kelvin,
    planetary forcing a downwelling shortwave flux in W/m^2.
    """

    kind: ForcingKind
    times_s: np.ndarray
    values: np.ndarray
    period_s: float

    def __post_init__(self):
        t = np.asarray(self.times_s, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 1:
            raise ConfigError("forcing samples must be parallel 1-D arrays")
        if np.any(np.diff(t) < 0.0):
            raise ConfigError("forcing sample times must be sorted")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise UnitDomainError("non-finite forcing sample")
        if self.period_s <= 0.0 or not math.isfinite(self.period_s):
            raise UnitDomainError("forcing period must be positive")
        if self.kind is ForcingKind.HEATER_TEMPERATURE and np.any(v <= 0.0):
            raise UnitDomainError("heater temperatures must be > 0 K")
        if self.kind is ForcingKind.SHORTWAVE_FLUX and np.any(v < 0.0):
            raise UnitDomainError("shortwave flux must be >= 0")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "times_s", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_samples(cls, kind, samples, period_s):
        """Build from an iterable of (time_s, value) pairs."""
        pairs = sorted(samples)
        return cls(
            kind=kind,
            times_s=np.array([p[0] for p in pairs], dtype=float),
            values=np.array([p[1] for p in pairs], dtype=float),
            period_s=period_s,
        )

    def value_at(self, t):
        """Periodic piecewise-linear evaluation at time(s) t [s]."""
        if self.times_s.size == 1:
            out = np.full_like(np.asarray(t, dtype=float), self.values[0])
            return float(out) if out.ndim == 0 else out
        out = np.interp(t, self.times_s, self.values, period=self.period_s)
        return float(out) if np.ndim(t) == 0 else out


def sinusoidal_heater(
    mean_k: float,
    amplitude_k: float,
    period_s: float,
    samples_per_cycle: int = 512,
    phase_rad: float = 0.0,
) -> ForcingProfile:
    """Sinusoidal heater temperature, sampled densely for linear interp."""
    t = np.linspace(0.0, period_s, samples_per_cycle, endpoint=False)
    v = mean_k + amplitude_k * np.sin(2.0 * np.pi * t / period_s + phase_rad)
    return ForcingProfile(ForcingKind.HEATER_TEMPERATURE, t, v, period_s)


def sinusoidal_flux(
    mean_wm2: float,
    amplitude_wm2: float,
    period_s: float,
    samples_per_cycle: int = 512,
    phase_rad: float = 0.0,
) -> ForcingProfile:
    """Sinusoidal downwelling shortwave flux; mean must cover the amplitude."""
    t = np.linspace(0.0, period_s, samples_per_cycle, endpoint=False)
    v = mean_wm2 + amplitude_wm2 * np.sin(2.0 * np.pi * t / period_s + phase_rad)
    return ForcingProfile(ForcingKind.SHORTWAVE_FLUX, t, v, period_s)


_FORCING_FOR_MODE = {
    Mode.CHAMBER: ForcingKind.HEATER_TEMPERATURE,
    Mode.PLANETARY_SURFACE: ForcingKind.SHORTWAVE_FLUX,
}


@dataclass(frozen=True)
class SimGrid:
    """Discretized soil column with its current temperature state.

    Node 0 is the (massless) surface; depths increase downward. Arrays
    are frozen after construction; stepping returns a new grid.
    """

    node_depths: np.ndarray  # m, monotone increasing, node 0 at 0
    node_temperatures: np.ndarray  # K
    soil: SoilSample
    k: float  # W/(m K)
    rho_c: float  # J/(m^3 K)
    skin_depth: float  # m
    shallow: bool = False  # opted out of the >= 3 skin-depth floor (bin mode)

    def __post_init__(self):
        z = np.ascontiguousarray(self.node_depths, dtype=float)
        T = np.ascontiguousarray(self.node_temperatures, dtype=float)
        if z.ndim != 1 or z.size < MIN_NODES:
            raise ConfigError(f"grid needs at least {MIN_NODES} nodes, got {z.size}")
        if T.shape != z.shape:
            raise ConfigError("node_temperatures shape differs from node_depths")
        if z[0] != 0.0 or np.any(np.diff(z) <= 0.0):
            raise ConfigError("node depths must start at 0 and increase strictly")
        if not np.all(np.isfinite(T)) or np.any(T <= 0.0):
            raise UnitDomainError("node temperatures must be finite and > 0 K")
        if self.k <= 0.0 or self.rho_c <= 0.0:
            raise UnitDomainError("grid needs positive k and rho*c")
        if not self.shallow and z[-1] < MIN_DEPTH_SKIN_DEPTHS * self.skin_depth:
            raise ConfigError(
                f"column depth {z[-1]:g} m is shallower than "
                f"{MIN_DEPTH_SKIN_DEPTHS:g} skin depths "
                f"({MIN_DEPTH_SKIN_DEPTHS * self.skin_depth:g} m); use bin mode "
                "to simulate a finite sample bin"
            )
        z.flags.writeable = False
        T.flags.writeable = False
        object.__setattr__(self, "node_depths", z)
        object.__setattr__(self, "node_temperatures", T)

    @property
    def n_nodes(self) -> int:
        return self.node_depths.size

    @property
    def inertia(self) -> float:
        return math.sqrt(self.k * self.rho_c)

    def with_temperatures(self, temperatures) -> "SimGrid":
        return replace(self, node_temperatures=np.array(temperatures, dtype=float))


def _geometric_depths(n_nodes: int, depth: float, first_cell: float) -> np.ndarray:
    """Node depths with geometrically growing spacing, finest at the surface."""
    m = n_nodes - 1
    if first_cell * m >= depth:
        dz = np.full(m, depth / m)
    else:
        lo, hi = 1.0 + 1e-12, 8.0
        for _ in range(200):
            r = 0.5 * (lo + hi)
            total = first_cell * (r**m - 1.0) / (r - 1.0)
            if total > depth:
                hi = r
            else:
                lo = r
        r = 0.5 * (lo + hi)
        dz = first_cell * r ** np.arange(m)
        dz *= depth / dz.sum()  # absorb the bisection residual
    return np.concatenate(([0.0], np.cumsum(dz)))


def build_grid(
    soil: SoilSample,
    env: EnvironmentConfig,
    nodes: int = 100,
    depth_factor: float = 5.0,
    *,
    thermo: Thermophysics | None = None,
    gas_params: GasConductionParams | None = None,
    k_r: float = 0.005,
    k_c: float = 0.010,
    initial_temperature_k: float = 293.15,
    first_cell_fraction: float = 40.0,
    use_bin_depth: bool = False,
) -> SimGrid:
    """Build a soil column grid for a sample in an environment.

    The column reaches ``depth_factor`` skin depths (default 5) with the
    first cell ``skin_depth / first_cell_fraction`` thick. With
    ``use_bin_depth`` the column instead spans the sample's own layer
    thickness, reproducing a finite bin over a zero-flux base; a shallow
    bin (under 3 skin depths) is allowed there and flagged with a
    warning, since that is precisely the physical experiment.
    """
    if nodes < MIN_NODES:
        raise ConfigError(f"nodes must be >= {MIN_NODES}, got {nodes}")
    tp = thermo or resolve_thermophysics(soil, env, gas_params, k_r=k_r, k_c=k_c)
    delta = skin_depth(tp.k, tp.rho_c, env.period_s)
    if use_bin_depth:
        depth = soil.depth_m
        shallow = depth < MIN_DEPTH_SKIN_DEPTHS * delta
        if shallow:
            _warnings.warn(
                f"bin depth {depth:g} m is under {MIN_DEPTH_SKIN_DEPTHS:g} skin "
                f"depths ({MIN_DEPTH_SKIN_DEPTHS * delta:g} m); the zero-flux "
                "base will influence the surface response",
                stacklevel=2,
            )
    else:
        if depth_factor < MIN_DEPTH_SKIN_DEPTHS:
            raise ConfigError(
                f"depth_factor must be >= {MIN_DEPTH_SKIN_DEPTHS:g}, got "
                f"{depth_factor:g} (use use_bin_depth for finite bins)"
            )
        depth = depth_factor * delta
        shallow = False
    z = _geometric_depths(nodes, depth, delta / first_cell_fraction)
    T = np.full(nodes, float(initial_temperature_k))
    return SimGrid(
        node_depths=z,
        node_temperatures=T,
        soil=soil,
        k=tp.k,
        rho_c=tp.rho_c,
        skin_depth=delta,
        shallow=shallow,
    )


@dataclass(frozen=True)
class SolverDiagnostics:
    scheme: str
    steps: int
    dt_s: float
    newton_iterations_max: int
    max_residual_wm2: float
    periodicity_error_k: float | None = None
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class SimResult:
    """Recorded series of one simulation run.

    ``net_flux`` at every recorded instant is the surface budget
    evaluated at the recorded surface temperature and forcing value, so
    the series can be audited against the temperature series directly.
    ``cycle_snapshots`` holds the full nodal temperature state at the
    start of the recorded window and after each recorded cycle, enabling
    independent column heat-content accounting.
    """

    times_s: np.ndarray
    surface_temperature_k: np.ndarray
    subsurface_temperature_k: dict
    net_flux_wm2: np.ndarray
    diagnostics: SolverDiagnostics
    cycle_snapshots: tuple
    grid: SimGrid

    @property
    def final_temperatures(self) -> np.ndarray:
        return self.grid.node_temperatures


class _Column:
    """Precomputed finite-volume operator for one run."""

    def __init__(self, grid: SimGrid, emissivity: float, albedo: float):
        z = grid.node_depths
        n = z.size
        dz = np.diff(z)
        self.n = n
        self.g = grid.k / dz  # face conductances W/(m^2 K)
        vol = np.zeros(n)
        vol[1:-1] = 0.5 * (dz[:-1] + dz[1:])
        vol[-1] = 0.5 * dz[-1]
        self.vol = vol
        self.rho_c = grid.rho_c
        self.eps = emissivity
        self.albedo = albedo
        self.sigma = STEFAN_BOLTZMANN

    def source_flux(self, mode: Mode, forcing_value: float) -> float:
        """Absorbed driving flux: eps*sigma*Th^4 (chamber) or (1-A)*Rsw."""
        if mode is Mode.CHAMBER:
            return self.eps * self.sigma * forcing_value**4
        return (1.0 - self.albedo) * forcing_value

    def net_flux(self, mode: Mode, forcing_value: float, t_surface):
        """Surface budget G = S - eps*sigma*Ts^4 [W/m^2]."""
        return self.source_flux(mode, forcing_value) - (
            self.eps * self.sigma * np.asarray(t_surface, dtype=float) ** 4
        )

    def explicit_dt_max(self) -> float:
        g = self.g
        cap = self.rho_c * self.vol
        inflow = np.empty(self.n)
        inflow[1:-1] = g[:-1] + g[1:]
        inflow[-1] = g[-1]
        return float(np.min(cap[1:] / inflow[1:]))


def _implicit_step(col, T, source, dt, newton_tol, newton_max_iter):
    """One backward-Euler step; Newton on the surface quartic.

    Returns (T_new, iterations, |surface residual| in W/m^2).
    """
    n, g, eps, sigma = col.n, col.g, col.eps, col.sigma
    cap = col.rho_c * col.vol / dt
    ab = np.zeros((3, n))
    ab[0, 2:] = -g[1:]
    ab[0, 1] = -g[0]
    ab[1, 1:-1] = cap[1:-1] + g[:-1] + g[1:]
    ab[1, -1] = cap[-1] + g[-1]
    ab[2, :-2] = -g[:-1]
    ab[2, -2] = -g[-1]
    Tn = T
    T = T.copy()
    F = np.empty(n)
    res0 = math.inf
    it = 0
    with np.errstate(over="ignore", invalid="ignore"):
        for it in range(1, newton_max_iter + 1):
            F[0] = eps * sigma * T[0] ** 4 - source + g[0] * (T[0] - T[1])
            F[1:-1] = (
                cap[1:-1] * (T[1:-1] - Tn[1:-1])
                - g[:-1] * (T[:-2] - T[1:-1])
                + g[1:] * (T[1:-1] - T[2:])
            )
            F[-1] = cap[-1] * (T[-1] - Tn[-1]) - g[-1] * (T[-2] - T[-1])
            ab[1, 0] = 4.0 * eps * sigma * T[0] ** 3 + g[0]
            if not np.all(np.isfinite(F)):
                break
            dT = solve_banded((1, 1), ab, -F, check_finite=False)
            T += dT
            res0 = abs(eps * sigma * T[0] ** 4 - source + g[0] * (T[0] - T[1]))
            if abs(dT[0]) < newton_tol:
                break
    return T, it, res0


def _explicit_step(col, T, source, dt):
    """One FTCS step; the massless surface node is re-balanced afterwards."""
    g, eps, sigma = col.g, col.eps, col.sigma
    cap = col.rho_c * col.vol
    with np.errstate(over="ignore", invalid="ignore"):
        T_new = T.copy()
        interior = g[:-1] * (T[:-2] - T[1:-1]) - g[1:] * (T[1:-1] - T[2:])
        T_new[1:-1] = T[1:-1] + dt * interior / cap[1:-1]
        T_new[-1] = T[-1] + dt * g[-1] * (T[-2] - T[-1]) / cap[-1]
        # scalar Newton on eps*sigma*T0^4 + g0*(T0 - T1) = source
        T0 = T_new[0] if T_new[0] > 0 else T_new[1]
        it = 0
        res = math.inf
        for it in range(1, 31):
            f = eps * sigma * T0**4 + g[0] * (T0 - T_new[1]) - source
            fp = 4.0 * eps * sigma * T0**3 + g[0]
            if not math.isfinite(f) or fp == 0.0:
                break
            dT0 = -f / fp
            T0 += dT0
            res = abs(f)
            if abs(dT0) < 1e-9:
                break
        T_new[0] = T0
    return T_new, it, res


def step(
    grid: SimGrid,
    forcing_value: float,
    dt: float,
    env: EnvironmentConfig,
    scheme: str = "implicit",
    newton_tol: float = 1e-6,
    newton_max_iter: int = 20,
    check_stability: bool = True,
) -> SimGrid:
    """Advance the column one time step under a fixed forcing value.

    ``forcing_value`` is the heater temperature [K] in chamber mode or
    the downwelling shortwave flux [W/m^2] in planetary mode. The
    explicit scheme enforces its step-size bound unless
    ``check_stability`` is disabled for diagnostics.
    """
    if dt <= 0.0 or not math.isfinite(dt):
        raise ConfigError(f"dt must be > 0, got {dt!r}")
    col = _Column(grid, grid.soil.emissivity, grid.soil.albedo)
    source = col.source_flux(env.mode, forcing_value)
    if scheme == "implicit":
        T, _, _ = _implicit_step(
            col, grid.node_temperatures, source, dt, newton_tol, newton_max_iter
        )
    elif scheme == "explicit":
        dt_max = col.explicit_dt_max()
        if check_stability and dt > dt_max:
            raise StepSizeError(dt, dt_max)
        T, _, _ = _explicit_step(col, grid.node_temperatures, source, dt)
    else:
        raise ConfigError(f"unknown scheme {scheme!r}")
    if not np.all(np.isfinite(T)):
        raise SolverError("non-finite temperature after step")
    return grid.with_temperatures(T)


def run_diurnal(
    grid: SimGrid,
    forcing: ForcingProfile,
    env: EnvironmentConfig,
    cycles: int = 1,
    dt: float = 1.0,
    *,
    scheme: str = "implicit",
    spin_up_cycles: int = 0,
    record_depths=(),
    record_every: int = 1,
    newton_tol: float = 1e-6,
    newton_max_iter: int = 20,
    check_stability: bool = True,
) -> SimResult:
    """Run ``spin_up_cycles + cycles`` actuation cycles, recording the last
    ``cycles`` of them.

    The forcing period must equal the environment period. Recording
    starts with the state at the beginning of the recorded window, then
    every ``record_every`` steps. ``record_depths`` asks for subsurface
    series linearly interpolated between nodes (e.g. a 3 cm thermocouple
    position).
    """
    if forcing.kind is not _FORCING_FOR_MODE[env.mode]:
        raise ConfigError(
            f"forcing kind {forcing.kind.value} does not drive mode {env.mode.value}"
        )
    if abs(forcing.period_s - env.period_s) > 1e-6 * env.period_s:
        raise ConfigError(
            f"forcing period {forcing.period_s:g} s != environment period "
            f"{env.period_s:g} s"
        )
    if cycles < 1 or spin_up_cycles < 0:
        raise ConfigError("cycles must be >= 1 and spin_up_cycles >= 0")
    if record_every < 1:
        raise ConfigError("record_every must be >= 1")
    steps_per_cycle = int(round(env.period_s / dt))
    if steps_per_cycle < 4:
        raise ConfigError(f"dt {dt:g} s resolves under 4 steps per cycle")

    col = _Column(grid, grid.soil.emissivity, grid.soil.albedo)
    warn: list[str] = []
    if scheme == "explicit":
        dt_max = col.explicit_dt_max()
        if check_stability and dt > dt_max:
            raise StepSizeError(dt, dt_max)
    elif scheme != "implicit":
        raise ConfigError(f"unknown scheme {scheme!r}")

    depths = np.asarray(record_depths, dtype=float)
    z = grid.node_depths
    if depths.size and (np.any(depths < 0.0) or np.any(depths > z[-1])):
        raise ConfigError(
            f"record depths must lie within the column [0, {z[-1]:g}] m"
        )
    idx_hi = np.clip(np.searchsorted(z, depths), 1, z.size - 1)
    w_hi = (depths - z[idx_hi - 1]) / (z[idx_hi] - z[idx_hi - 1])

    total_steps = (spin_up_cycles + cycles) * steps_per_cycle
    start_step = spin_up_cycles * steps_per_cycle
    t_end = (1.0 + np.arange(total_steps)) * dt
    forcing_values = forcing.value_at(t_end)

    n_rec = cycles * steps_per_cycle // record_every + 1
    rec_t = np.empty(n_rec)
    rec_surf = np.empty(n_rec)
    rec_flux = np.empty(n_rec)
    rec_sub = np.empty((depths.size, n_rec))
    snapshots = []

    T = grid.node_temperatures.copy()
    newton_max = 0
    max_res = 0.0
    i_rec = 0

    def record(i, t, forcing_value):
        nonlocal i_rec
        rec_t[i] = t
        rec_surf[i] = T[0]
        rec_flux[i] = col.net_flux(env.mode, forcing_value, T[0])
        if depths.size:
            rec_sub[:, i] = (1.0 - w_hi) * T[idx_hi - 1] + w_hi * T[idx_hi]
        i_rec = i + 1

    if start_step == 0:
        record(0, 0.0, forcing.value_at(0.0))
        snapshots.append(T.copy())

    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(total_steps):
            source = col.source_flux(env.mode, forcing_values[s])
            if scheme == "implicit":
                T, iters, res = _implicit_step(
                    col, T, source, dt, newton_tol, newton_max_iter
                )
            else:
                T, iters, res = _explicit_step(col, T, source, dt)
            if not np.all(np.isfinite(T)):
                raise SolverError("temperature diverged", step=s)
            newton_max = max(newton_max, iters)
            max_res = max(max_res, res)
            done = s + 1
            if done == start_step:
                record(0, t_end[s], forcing_values[s])
                snapshots.append(T.copy())
                continue
            if done > start_step:
                rel = done - start_step
                if rel % record_every == 0:
                    record(rel // record_every, t_end[s], forcing_values[s])
                if rel % steps_per_cycle == 0:
                    snapshots.append(T.copy())

    rec_t = rec_t[:i_rec]
    rec_surf = rec_surf[:i_rec]
    rec_flux = rec_flux[:i_rec]
    rec_sub = rec_sub[:, :i_rec]

    periodicity = None
    per_rec = steps_per_cycle // record_every
    if cycles >= 2 and per_rec >= 1:
        last = rec_surf[-per_rec:]
        prev = rec_surf[-2 * per_rec : -per_rec]
        periodicity = float(np.max(np.abs(last - prev)))

    diag = SolverDiagnostics(
        scheme=scheme,
        steps=total_steps,
        dt_s=dt,
        newton_iterations_max=newton_max,
        max_residual_wm2=max_res,
        periodicity_error_k=periodicity,
        warnings=tuple(warn),
    )
    return SimResult(
        times_s=rec_t,
        surface_temperature_k=rec_surf,
        subsurface_temperature_k={
            float(d): rec_sub[i] for i, d in enumerate(depths)
        },
        net_flux_wm2=rec_flux,
        diagnostics=diag,
        cycle_snapshots=tuple(snapshots),
        grid=grid.with_temperatures(T),
    )


def analytic_reference(
    inertia: float,
    flux_amplitude: float,
    period_s: float,
    depth_skin_depths: float = 0.0,
) -> tuple[float, float]:
    """Periodic half-space response to a sinusoidal net surface flux.

    For net flux of amplitude dG and angular frequency 2*pi/P, the
    temperature wave has surface amplitude dG / (I * sqrt(2*pi/P)),
    decays by e^-1 per skin depth, and lags the flux by pi/4 at the
    surface plus one radian per skin depth of descent. ``depth`` is
    given in skin depths (the natural normalized coordinate). Returns
    (amplitude [K], phase lag [rad]).
    """
    if inertia <= 0.0 or flux_amplitude < 0.0 or period_s <= 0.0:
        raise UnitDomainError("inertia and period must be > 0, amplitude >= 0")
    if depth_skin_depths < 0.0:
        raise UnitDomainError("depth must be >= 0 skin depths")
    surface_amp = flux_amplitude / (inertia * math.sqrt(2.0 * math.pi / period_s))
    amplitude = surface_amp * math.exp(-depth_skin_depths)
    phase_lag = depth_skin_depths + math.pi / 4.0
    return amplitude, phase_lag


def write_series_csv(result: SimResult, path) -> None:
    """Export recorded series as CSV: time, surface/subsurface temps, flux.

    Temperatures are written in Celsius to match the observational data
    conventions; depth columns are labelled with their depth in meters.
    """
    depths = sorted(result.subsurface_temperature_k)
    header = ["time_s", "T_surface_C"]
    header += [f"T_subsurface_C@{d:g}" for d in depths]
    header += ["G_Wm2"]
    cols = [result.times_s, result.surface_temperature_k - 273.15]
    cols += [result.subsurface_temperature_k[d] - 273.15 for d in depths]
    cols += [result.net_flux_wm2]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(format(v, ".6f") for v in row) + "\n")
