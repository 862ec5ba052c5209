"""Entanglement of parametric down-conversion with phase mismatch at
finite temperature: closed-form two-mode Gaussian dynamics, invariant
based separability analysis, and brute-force oracles."""

from .analysis import (
    BteResult,
    PhasePoint,
    WitnessValue,
    birth_time,
    critical_temperature,
    phase_boundary,
    s0_threshold,
    witness,
)
from .errors import (
    IntegrationError,
    NumericalDomainError,
    TruncationError,
    ValidationError,
)
from .fock_oracle import (
    FockState,
    MomentTrajectory,
    evolve_fock,
    evolve_moments_ode,
    fock_log_negativity,
    moments_from_fock,
)
from .gaussian_core import (
    BlockDecomposition,
    CovarianceMatrix,
    EntanglementReport,
    SymplecticInvariants,
    block_decompose,
    entanglement_report,
    log_negativity,
    physicality_check,
    separability_indicator,
    symplectic_invariants,
)
from .pdc_dynamics import (
    HBAR,
    K_B,
    ModeCoefficients,
    PdcParams,
    ThermalInit,
    ab_coefficients,
    covariance_matrix,
    det_gamma_closed_form,
    mean_photon_numbers,
    squeezing_parameter,
    thermal_init,
    thermal_occupation,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "BteResult",
    "CovarianceMatrix",
    "EntanglementReport",
    "FockState",
    "HBAR",
    "IntegrationError",
    "K_B",
    "ModeCoefficients",
    "MomentTrajectory",
    "NumericalDomainError",
    "PdcParams",
    "PhasePoint",
    "SymplecticInvariants",
    "ThermalInit",
    "TruncationError",
    "ValidationError",
    "WitnessValue",
    "ab_coefficients",
    "birth_time",
    "block_decompose",
    "covariance_matrix",
    "critical_temperature",
    "det_gamma_closed_form",
    "entanglement_report",
    "evolve_fock",
    "evolve_moments_ode",
    "fock_log_negativity",
    "log_negativity",
    "mean_photon_numbers",
    "moments_from_fock",
    "phase_boundary",
    "physicality_check",
    "s0_threshold",
    "separability_indicator",
    "squeezing_parameter",
    "symplectic_invariants",
    "thermal_init",
    "thermal_occupation",
    "witness",
]
