"""Pressure- and granularity-dependent bulk thermal conductivity.

Bulk conductivity of a granular soil decomposes into three additive
transfer mechanisms:

    k = k_r + k_c + k_g

where k_r is transfer across pore spaces, k_c is conduction through
grain contact areas, and k_g is conduction of the pore-filling gas.
Gas conduction dominates between roughly 0.1 and 1000 mbar, where
conductivity correlates near-linearly with particle size; above
1000 mbar the grain-size dependence weakens.

k_r and k_c are treated as small per-sample constants. k_g follows a
parametric power-law family

    k_g = C * p^a * d^(-s * log10(p / p_ref))

with pressure p in mbar and grain diameter d in mm. The default
parameters are tuned to reproduce the familiar empirical behaviour of
granular media under CO2/air (monotone rise with pressure, grain-size
sensitivity growing as pressure drops) with regolith-like magnitudes;
they are configuration, not measured ground truth, and should be
overridden when lab calibrations exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnitDomainError

#: Pressure band (mbar) where pore-gas conduction dominates. The model
#: still evaluates outside this band; results carry a regime flag.
GAS_REGIME_MIN_MBAR = 0.1
GAS_REGIME_MAX_MBAR = 1000.0


@dataclass(frozen=True)
class GasConductionParams:
    """Parameters of the pore-gas conduction power law."""

    coefficient: float = 0.012
    pressure_exponent: float = 0.27
    grain_size_sensitivity: float = 0.11
    reference_pressure_mbar: float = 1.08e5

    def __post_init__(self):
        if not (math.isfinite(self.coefficient) and self.coefficient >= 0.0):
            raise UnitDomainError(f"coefficient {self.coefficient!r} must be >= 0")
        if not (
            math.isfinite(self.reference_pressure_mbar)
            and self.reference_pressure_mbar > 0.0
        ):
            raise UnitDomainError("reference pressure must be > 0")


@dataclass(frozen=True)
class ConductivityBreakdown:
    """Bulk conductivity split into its three mechanisms [W/(m K)].

    ``in_gas_regime`` is False when the evaluation pressure fell outside
    the gas-dominated band; treat such values as extrapolations.
    """

    k_r: float
    k_c: float
    k_g: float
    k_total: float
    in_gas_regime: bool = True


def gas_conduction(
    pressure_mbar: float,
    grain_diameter_mm: float,
    params: GasConductionParams = GasConductionParams(),
) -> float:
    """Pore-gas conduction term k_g [W/(m K)]. Exactly zero in vacuum."""
    if not math.isfinite(pressure_mbar) or pressure_mbar < 0.0:
        raise UnitDomainError(f"pressure {pressure_mbar!r} mbar must be >= 0")
    if not math.isfinite(grain_diameter_mm) or grain_diameter_mm <= 0.0:
        raise UnitDomainError(f"grain diameter {grain_diameter_mm!r} mm must be > 0")
    if pressure_mbar == 0.0 or params.coefficient == 0.0:
        return 0.0
    exponent = -params.grain_size_sensitivity * math.log10(
        pressure_mbar / params.reference_pressure_mbar
    )
    return (
        params.coefficient
        * pressure_mbar**params.pressure_exponent
        * grain_diameter_mm**exponent
    )


def bulk_conductivity(
    pressure_mbar: float,
    grain_diameter_mm: float,
    params: GasConductionParams = GasConductionParams(),
    k_r: float = 0.005,
    k_c: float = 0.010,
) -> ConductivityBreakdown:
    """Evaluate all three conduction terms and their sum.

    ``k_r`` and ``k_c`` are caller-supplied constants (defaults are
    placeholder magnitudes for loose dry soil); they matter mostly
    outside the gas-dominated pressure band.
    """
    if not math.isfinite(k_r) or k_r < 0.0:
        raise UnitDomainError(f"k_r {k_r!r} must be >= 0")
    if not math.isfinite(k_c) or k_c < 0.0:
        raise UnitDomainError(f"k_c {k_c!r} must be >= 0")
    k_g = gas_conduction(pressure_mbar, grain_diameter_mm, params)
    in_regime = GAS_REGIME_MIN_MBAR <= pressure_mbar <= GAS_REGIME_MAX_MBAR
    return ConductivityBreakdown(
        k_r=k_r,
        k_c=k_c,
        k_g=k_g,
        k_total=k_r + k_c + k_g,
        in_gas_regime=in_regime,
    )


def thermal_inertia(k: float, density_kg_m3: float, specific_heat: float) -> float:
    """Thermal inertia I = sqrt(k * rho * c) [tiu].

    Higher inertia means slower response of surface temperature to a
    given heat flux; conductivity is the dominant lever because it spans
    orders of magnitude with pressure while rho and c do not.
    """
    for label, value in (
        ("k", k),
        ("density", density_kg_m3),
        ("specific heat", specific_heat),
    ):
        if not math.isfinite(value) or value <= 0.0:
            raise UnitDomainError(f"{label} {value!r} must be > 0")
    return math.sqrt(k * density_kg_m3 * specific_heat)
