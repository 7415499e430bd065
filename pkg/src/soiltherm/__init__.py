"""Soil thermophysics toolkit.

Simulates the transient heating of planetary soil analogs under
chamber or surface radiative forcing, ingests radiometric frame
sequences into per-soil temperature series, and estimates thermal
inertia from cycle amplitudes. A CLI ties the stages into
reproducible, manifest-tracked batch runs.
"""

from ._version import __version__
from .conductivity import (
    GAS_REGIME_MAX_MBAR,
    GAS_REGIME_MIN_MBAR,
    ConductivityBreakdown,
    GasConductionParams,
    bulk_conductivity,
    gas_conduction,
    thermal_inertia,
)
from .core import (
    ATI_COEFFICIENT,
    CELSIUS_OFFSET,
    CONSTANTS,
    STEFAN_BOLTZMANN,
    EnvironmentConfig,
    Gas,
    Mode,
    PhysicalConstants,
    SoilSample,
    Temperature,
    celsius_to_kelvin,
    kelvin_to_celsius,
    validate_sample,
)
from .errors import (
    ConfigError,
    DataError,
    FrameParseError,
    SampleValidationError,
    SoilthermError,
    SolverError,
    StepSizeError,
    UnitDomainError,
)
from .estimators import (
    AmplitudeMetrics,
    Convention,
    EstimateRow,
    ati,
    extract_amplitudes,
    i_sin,
    net_flux,
    planetary_net_flux,
    write_estimates_csv,
)
from .imaging import (
    AuxChannels,
    RoiPolygon,
    RoiSeries,
    ThermalFrame,
    assemble_series,
    detect_transient_end,
    load_aux_csv,
    load_frame,
    load_manifest,
    load_roi_file,
    parse_frame,
    rasterize,
    roi_stats,
    serialize_frame,
)
from .simulator import (
    ForcingKind,
    ForcingProfile,
    SimGrid,
    SimResult,
    Thermophysics,
    analytic_reference,
    build_grid,
    resolve_thermophysics,
    run_diurnal,
    sinusoidal_flux,
    sinusoidal_heater,
    skin_depth,
    step,
)

__all__ = [
    "__version__",
    "ATI_COEFFICIENT",
    "CELSIUS_OFFSET",
    "CONSTANTS",
    "GAS_REGIME_MAX_MBAR",
    "GAS_REGIME_MIN_MBAR",
    "STEFAN_BOLTZMANN",
    "AmplitudeMetrics",
    "AuxChannels",
    "ConductivityBreakdown",
    "ConfigError",
    "Convention",
    "DataError",
    "EnvironmentConfig",
    "EstimateRow",
    "ForcingKind",
    "ForcingProfile",
    "FrameParseError",
    "Gas",
    "GasConductionParams",
    "Mode",
    "PhysicalConstants",
    "RoiPolygon",
    "RoiSeries",
    "SampleValidationError",
    "SimGrid",
    "SimResult",
    "SoilSample",
    "SoilthermError",
    "SolverError",
    "StepSizeError",
    "Temperature",
    "ThermalFrame",
    "Thermophysics",
    "UnitDomainError",
    "analytic_reference",
    "assemble_series",
    "ati",
    "build_grid",
    "bulk_conductivity",
    "celsius_to_kelvin",
    "detect_transient_end",
    "extract_amplitudes",
    "gas_conduction",
    "i_sin",
    "kelvin_to_celsius",
    "load_aux_csv",
    "load_frame",
    "load_manifest",
    "load_roi_file",
    "net_flux",
    "parse_frame",
    "planetary_net_flux",
    "rasterize",
    "resolve_thermophysics",
    "roi_stats",
    "run_diurnal",
    "serialize_frame",
    "sinusoidal_flux",
    "sinusoidal_heater",
    "skin_depth",
    "step",
    "thermal_inertia",
    "validate_sample",
    "write_estimates_csv",
]
