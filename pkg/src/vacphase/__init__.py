"""Quantum and quantum-vacuum geometric phases of light in helical gyroelectric fibres."""

from .errors import (
    ConfigInvalid,
    EvanescentMode,
    NonPositiveIndex,
    OrthogonalEndpoints,
    VacPhaseError,
)
from .geometry import (
    ConstantPrecession,
    HelixSpec,
    Sampled,
    cycle_period,
    polar_angle,
    precession_frequency,
    solid_angle,
    wave_vector,
)
from .media import GyroelectricTensor, permittivity_matrix, refractive_indices, transverse_eigenmodes
from .phase_engine import (
    OrderingMode,
    PhaseBreakdown,
    PhotonOccupation,
    cyclic_vacuum_phase,
    phi0,
    sector_phase,
    total_phase,
    vacuum_total,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigInvalid",
    "ConstantPrecession",
    "EvanescentMode",
    "GyroelectricTensor",
    "HelixSpec",
    "NonPositiveIndex",
    "OrderingMode",
    "OrthogonalEndpoints",
    "PhaseBreakdown",
    "PhotonOccupation",
    "Sampled",
    "VacPhaseError",
    "cycle_period",
    "cyclic_vacuum_phase",
    "permittivity_matrix",
    "phi0",
    "polar_angle",
    "precession_frequency",
    "refractive_indices",
    "sector_phase",
    "solid_angle",
    "total_phase",
    "transverse_eigenmodes",
    "vacuum_total",
    "wave_vector",
]
