"""Domain types, physical constants, and unit discipline.

All internal physics runs in SI with temperature in Kelvin. Celsius
appears only at I/O boundaries (frame files, aux spreadsheets, CLI
configuration): the radiative budget needs absolute temperature to the
fourth power, so converting once at the boundary avoids scattered
offsets.

Thermal inertia is always expressed in tiu = W s^(1/2) m^-2 K^-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import SampleValidationError, UnitDomainError

CELSIUS_OFFSET = 273.15

#: Stefan-Boltzmann constant [W m^-2 K^-4]
STEFAN_BOLTZMANN = 5.6704e-8

#: Scale factor turning the dimensionless (1-A)/dT ratio into tiu.
ATI_COEFFICIENT = 4186.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants used by the radiative budget and the ATI estimator.

    Immutable for a process lifetime; construct a replacement instance to
    experiment with different values.
    """

    stefan_boltzmann: float = STEFAN_BOLTZMANN
    ati_coefficient: float = ATI_COEFFICIENT


CONSTANTS = PhysicalConstants()


def celsius_to_kelvin(t_c):
    """Convert Celsius to Kelvin.

    Accepts scalars or arrays. Rejects non-finite input and anything at
    or below absolute zero.
    """
    t = np.asarray(t_c, dtype=float)
    if not np.all(np.isfinite(t)):
        raise UnitDomainError("non-finite temperature")
    if np.any(t <= -CELSIUS_OFFSET):
        raise UnitDomainError(
            f"temperature {np.min(t):g} degC is at or below absolute zero"
        )
    out = t + CELSIUS_OFFSET
    return float(out) if np.isscalar(t_c) or out.ndim == 0 else out


def kelvin_to_celsius(t_k):
    """Inverse of :func:`celsius_to_kelvin`; requires strictly positive Kelvin."""
    t = np.asarray(t_k, dtype=float)
    if not np.all(np.isfinite(t)):
        raise UnitDomainError("non-finite temperature")
    if np.any(t <= 0.0):
        raise UnitDomainError(f"temperature {np.min(t):g} K is not physical")
    out = t - CELSIUS_OFFSET
    return float(out) if np.isscalar(t_k) or out.ndim == 0 else out


@dataclass(frozen=True)
class Temperature:
    """A physical temperature. Canonical storage is Kelvin."""

    kelvin: float

    def __post_init__(self):
        if not math.isfinite(self.kelvin) or self.kelvin <= 0.0:
            raise UnitDomainError(f"temperature {self.kelvin!r} K is not physical")

    @classmethod
    def from_celsius(cls, t_c: float) -> "Temperature":
        return cls(celsius_to_kelvin(t_c))

    @property
    def celsius(self) -> float:
        return self.kelvin - CELSIUS_OFFSET


class Gas(Enum):
    """Chamber/atmosphere fill driving the pore-gas conduction term."""

    CO2_95 = "co2_95"
    EARTH_AIR = "earth_air"
    VACUUM = "vacuum"


class Mode(Enum):
    """Forcing regime: radiative heater panels vs. shortwave insolation."""

    CHAMBER = "chamber"
    PLANETARY_SURFACE = "planetary_surface"


@dataclass(frozen=True)
class EnvironmentConfig:
    """Pressure, gas fill, forcing mode, and actuation period.

    ``period_s`` is the diurnal/actuation period: a planetary day for
    surface runs, or the experimental heating-cooling period for chamber
    runs (hundreds of minutes in practice).
    """

    pressure_mbar: float
    gas: Gas
    mode: Mode
    period_s: float

    def __post_init__(self):
        if not math.isfinite(self.pressure_mbar) or self.pressure_mbar < 0.0:
            raise UnitDomainError(f"pressure {self.pressure_mbar!r} mbar < 0")
        if not math.isfinite(self.period_s) or self.period_s <= 0.0:
            raise UnitDomainError(f"period {self.period_s!r} s must be positive")

    @property
    def period_min(self) -> float:
        return self.period_s / 60.0


@dataclass(frozen=True)
class SoilSample:
    """Thermophysical description of one sample bin.

    Granularity is the sieve range of grain diameters. Density is bulk
    density as measured (g/ml). ``emissivity`` defaults to 1 and
    ``albedo`` to 0: remote sensing with no prior soil knowledge assumes
    a black surface, consistent with Kirchhoff's law 1 = A + eps.

    ``prescribed_inertia_tiu`` short-circuits the conductivity model when
    the caller wants to pin I directly (parameter sweeps, closed-loop
    tests). ``specific_heat`` is optional because bulk density alone does
    not determine I; it must be supplied before a sample can be
    simulated.
    """

    name: str
    granularity_mm: tuple[float, float]
    density_g_ml: float
    bin_cm: tuple[float, float, float]
    emissivity: float = 1.0
    albedo: float = 0.0
    prescribed_inertia_tiu: float | None = None
    specific_heat: float | None = None  # J/(kg K)
    layer_thickness_m: float | None = None

    @property
    def density_kg_m3(self) -> float:
        return 1000.0 * self.density_g_ml

    @property
    def mean_grain_mm(self) -> float:
        lo, hi = self.granularity_mm
        return 0.5 * (lo + hi)

    @property
    def depth_m(self) -> float:
        """Soil layer depth: explicit layer thickness, else the bin depth."""
        if self.layer_thickness_m is not None:
            return self.layer_thickness_m
        return self.bin_cm[2] / 100.0

    def with_(self, **changes) -> "SoilSample":
        return replace(self, **changes)


def validate_sample(sample: SoilSample, check_kirchhoff: bool = False) -> SoilSample:
    """Check every sample invariant; return the sample unchanged if all hold.

    Raises :class:`SampleValidationError` listing each violated invariant
    with its field path. The Kirchhoff consistency check (1 = A + eps) is
    opt-in because unit emissivity with nonzero albedo is a deliberate
    no-prior-knowledge convention, not an error.
    """
    v = []
    lo, hi = sample.granularity_mm
    if not (math.isfinite(lo) and math.isfinite(hi)):
        v.append(("granularity_mm", "non-finite bound"))
    else:
        if lo <= 0.0:
            v.append(("granularity_mm[0]", f"lower bound {lo:g} mm must be > 0"))
        if lo > hi:
            v.append(("granularity_mm", f"lower bound {lo:g} > upper bound {hi:g}"))
    if not (math.isfinite(sample.density_g_ml) and sample.density_g_ml > 0.0):
        v.append(("density_g_ml", f"density {sample.density_g_ml!r} must be > 0"))
    if any(not (math.isfinite(d) and d > 0.0) for d in sample.bin_cm):
        v.append(("bin_cm", f"all bin dimensions must be > 0, got {sample.bin_cm}"))
    if not (0.0 < sample.emissivity <= 1.0):
        v.append(("emissivity", f"{sample.emissivity!r} outside (0, 1]"))
    if not (0.0 <= sample.albedo < 1.0):
        v.append(("albedo", f"{sample.albedo!r} outside [0, 1)"))
    if sample.prescribed_inertia_tiu is not None and not (
        math.isfinite(sample.prescribed_inertia_tiu)
        and sample.prescribed_inertia_tiu > 0.0
    ):
        v.append(("prescribed_inertia_tiu", "must be > 0 when given"))
    if sample.specific_heat is not None and not (
        math.isfinite(sample.specific_heat) and sample.specific_heat > 0.0
    ):
        v.append(("specific_heat", "must be > 0 when given"))
    if sample.layer_thickness_m is not None and not (
        math.isfinite(sample.layer_thickness_m) and sample.layer_thickness_m > 0.0
    ):
        v.append(("layer_thickness_m", "must be > 0 when given"))
    if check_kirchhoff:
        residual = 1.0 - (sample.albedo + sample.emissivity)
        if abs(residual) > 1e-9:
            v.append(
                ("albedo+emissivity", f"1 = A + eps violated by {residual:+.3g}")
            )
    if v:
        raise SampleValidationError(sample.name, v)
    return sample
