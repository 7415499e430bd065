"""Thermal-inertia estimation from observed temperature and flux series.

Two estimators are provided, both driven by amplitudes of the surface
response over one actuation period:

    ati   = 4186 * (1 - A) / dT          (apparent thermal inertia)
    i_sin = dG / (dT * sqrt(2*pi / P))   (sinusoidal thin-layer estimate)

Amplitudes can be referenced to the start of actuation (dX = X_max -
X_init) or to the series extremes (dX = X_max - X_min). Both are always
computed; the init-based convention is the default for reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import ATI_COEFFICIENT, STEFAN_BOLTZMANN
from .errors import UnitDomainError


class Convention(Enum):
    """Which pair of series points defines an amplitude."""

    INIT_BASED = "init"
    MINMAX_BASED = "minmax"


def net_flux(t_heater, t_surface, emissivity: float = 1.0):
    """Radiative net flux onto a surface facing a heater plate.

    G = eps * sigma * (T_heater^4 - T_surface^4), positive when the
    heater is hotter. Accepts scalars or arrays (Kelvin).
    """
    th = np.asarray(t_heater, dtype=float)
    ts = np.asarray(t_surface, dtype=float)
    if not (np.all(np.isfinite(th)) and np.all(np.isfinite(ts))):
        raise UnitDomainError("net_flux temperatures must be finite")
    if np.any(th <= 0.0) or np.any(ts <= 0.0):
        raise UnitDomainError("net_flux temperatures must be > 0 K")
    if not 0.0 < emissivity <= 1.0:
        raise UnitDomainError(f"emissivity must be in (0, 1], got {emissivity!r}")
    out = emissivity * STEFAN_BOLTZMANN * (th**4 - ts**4)
    return float(out) if out.ndim == 0 else out


def planetary_net_flux(r_sw, t_surface, albedo: float = 0.0, emissivity: float = 1.0):
    """Net flux into a sunlit surface: (1 - A) * R_sw - eps * sigma * T_s^4."""
    rs = np.asarray(r_sw, dtype=float)
    ts = np.asarray(t_surface, dtype=float)
    if not (np.all(np.isfinite(rs)) and np.all(np.isfinite(ts))):
        raise UnitDomainError("planetary_net_flux inputs must be finite")
    if np.any(rs < 0.0):
        raise UnitDomainError("shortwave flux must be >= 0")
    if np.any(ts <= 0.0):
        raise UnitDomainError("surface temperature must be > 0 K")
    if not 0.0 <= albedo <= 1.0:
        raise UnitDomainError(f"albedo must be in [0, 1], got {albedo!r}")
    if not 0.0 < emissivity <= 1.0:
        raise UnitDomainError(f"emissivity must be in (0, 1], got {emissivity!r}")
    out = (1.0 - albedo) * rs - emissivity * STEFAN_BOLTZMANN * ts**4
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class AmplitudeMetrics:
    """Temperature and flux amplitudes of one actuation cycle.

    Holds the init-referenced and extreme-referenced deltas side by
    side; ``delta_t`` / ``delta_g`` expose the pair selected by
    ``convention``.
    """

    t_init: float  # K
    t_max: float
    t_min: float
    delta_t_init: float  # T_max - T_init
    delta_t_minmax: float  # T_max - T_min
    g_init: float  # W/m^2
    g_max: float
    g_min: float
    delta_g_init: float
    delta_g_minmax: float
    period_s: float
    convention: Convention = Convention.INIT_BASED

    @property
    def delta_t(self) -> float:
        if self.convention is Convention.MINMAX_BASED:
            return self.delta_t_minmax
        return self.delta_t_init

    @property
    def delta_g(self) -> float:
        if self.convention is Convention.MINMAX_BASED:
            return self.delta_g_minmax
        return self.delta_g_init


def extract_amplitudes(
    temps_k,
    fluxes_wm2,
    period_s: float,
    convention: Convention = Convention.INIT_BASED,
) -> AmplitudeMetrics:
    """Reduce aligned temperature and flux series to cycle amplitudes.

    The first sample is taken as the state when actuation starts. Both
    amplitude conventions are populated regardless of the one selected.
    """
    T = np.asarray(temps_k, dtype=float)
    G = np.asarray(fluxes_wm2, dtype=float)
    if T.size == 0 or G.size == 0:
        raise UnitDomainError("amplitude extraction needs non-empty series")
    if T.shape != G.shape:
        raise UnitDomainError(
            f"temperature and flux series are misaligned ({T.shape} vs {G.shape})"
        )
    if not (np.all(np.isfinite(T)) and np.all(np.isfinite(G))):
        raise UnitDomainError("series contain non-finite samples")
    if period_s <= 0.0 or not math.isfinite(period_s):
        raise UnitDomainError(f"period must be > 0 s, got {period_s!r}")
    t_init, t_max, t_min = float(T[0]), float(T.max()), float(T.min())
    g_init, g_max, g_min = float(G[0]), float(G.max()), float(G.min())
    return AmplitudeMetrics(
        t_init=t_init,
        t_max=t_max,
        t_min=t_min,
        delta_t_init=t_max - t_init,
        delta_t_minmax=t_max - t_min,
        g_init=g_init,
        g_max=g_max,
        g_min=g_min,
        delta_g_init=g_max - g_init,
        delta_g_minmax=g_max - g_min,
        period_s=float(period_s),
        convention=convention,
    )


def ati(albedo: float, delta_t: float) -> float:
    """Apparent thermal inertia from a diurnal temperature amplitude.

    4186 * (1 - A) / dT, in tiu. Dimensionally heuristic but the
    standard remote-sensing day/night index.
    """
    if not 0.0 <= albedo < 1.0:
        raise UnitDomainError(f"albedo must be in [0, 1), got {albedo!r}")
    if not delta_t > 0.0:
        raise UnitDomainError(f"temperature amplitude must be > 0 K, got {delta_t!r}")
    return ATI_COEFFICIENT * (1.0 - albedo) / delta_t


def i_sin(delta_g: float, delta_t: float, period_s: float) -> float:
    """Thermal inertia from flux and temperature amplitudes of one cycle.

    dG / (dT * sqrt(2*pi/P)), in tiu: the periodic half-space relation
    between a sinusoidal surface flux and its temperature response.
    """
    if not delta_t > 0.0:
        raise UnitDomainError(f"temperature amplitude must be > 0 K, got {delta_t!r}")
    if not period_s > 0.0:
        raise UnitDomainError(f"period must be > 0 s, got {period_s!r}")
    if delta_g < 0.0:
        raise UnitDomainError(f"flux amplitude must be >= 0, got {delta_g!r}")
    return delta_g / (delta_t * math.sqrt(2.0 * math.pi / period_s))


def estimate_from_metrics(
    metrics: AmplitudeMetrics, albedo: float = 0.0
) -> tuple[float, float]:
    """Apply both estimators to one cycle's amplitudes: (i_sin, ati) in tiu."""
    return (
        i_sin(metrics.delta_g, metrics.delta_t, metrics.period_s),
        ati(albedo, metrics.delta_t),
    )


@dataclass(frozen=True)
class EstimateRow:
    """One soil-in-experiment line of an estimate table."""

    experiment: str
    soil: str
    i_sin_tiu: float
    ati_tiu: float
    delta_t_k: float
    delta_g_wm2: float
    period_s: float
    reference_i_sin_tiu: float | None = None
    reference_ati_tiu: float | None = None
    flagged: bool = False
    degenerate: bool = False  # flat series; estimates undefined, row kept


def write_estimates_csv(rows, path) -> None:
    """Export estimate rows as CSV (one soil per row, both estimators)."""
    header = [
        "experiment",
        "soil",
        "I_sin_tiu",
        "ATI_tiu",
        "delta_T_K",
        "delta_G_Wm2",
        "period_s",
        "reference_I_sin_tiu",
        "reference_ATI_tiu",
        "flagged",
        "degenerate",
    ]

    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return "yes" if v else "no"
        if isinstance(v, float):
            return format(v, ".6g") if math.isfinite(v) else ""
        return str(v)

    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for r in rows:
            fh.write(
                ",".join(
                    fmt(v)
                    for v in (
                        r.experiment,
                        r.soil,
                        r.i_sin_tiu,
                        r.ati_tiu,
                        r.delta_t_k,
                        r.delta_g_wm2,
                        r.period_s,
                        r.reference_i_sin_tiu,
                        r.reference_ati_tiu,
                        r.flagged,
                        r.degenerate,
                    )
                )
                + "\n"
            )
