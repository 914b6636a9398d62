"""Exact entanglement spectrum of the infinite anisotropic XY chain.

The closed-form results (geometric eigenvalue ladders with exact
partition-counting degeneracies, Renyi entropies via theta functions)
live in :mod:`entspec.spectrum`; independent free-fermion and
exact-diagonalization verification in :mod:`entspec.oracle`; degeneracy
asymptotics and coefficient extraction in :mod:`entspec.asymptotics`.
"""

from .elliptic import (
    EllipticData,
    complete_elliptic_K,
    modular_lambda,
    modular_lambda_complement,
    nome,
    theta,
)
from .errors import (
    ConvergenceError,
    CriticalInputError,
    DomainError,
    EntspecError,
    PairingError,
    ResourceLimitError,
)
from .model import (
    GapInfo,
    ModelPoint,
    Regime,
    Region,
    classify,
    elliptic_parameter,
    gap_info,
)
from .partitions import PartitionTable, build_tables, series_coefficients_check
from .spectrum import (
    EntanglementSpectrum,
    EntropyValue,
    Representation,
    critical_scaling_probe,
    exact_spectrum,
    fit_scaling_exponent,
    max_representable_levels,
    renyi_entropy,
    von_neumann_entropy,
    zeta_product,
)
from .asymptotics import (
    SaddleData,
    asymptotic_degeneracy,
    cauchy_degeneracy,
    generating_function_singularity_check,
    saddle_radius,
)
from .oracle import (
    CorrelationData,
    OracleSource,
    OracleSpectrum,
    block_spectrum,
    build_correlations,
    compare_spectra,
    exact_diagonalization,
    free_fermion_ring_spectrum,
    mode_occupations,
    spectrum_from_modes,
)

__version__ = "0.1.0"

__all__ = [
    "EllipticData",
    "complete_elliptic_K",
    "modular_lambda",
    "modular_lambda_complement",
    "nome",
    "theta",
    "EntspecError",
    "DomainError",
    "CriticalInputError",
    "ConvergenceError",
    "ResourceLimitError",
    "PairingError",
    "GapInfo",
    "ModelPoint",
    "Regime",
    "Region",
    "classify",
    "elliptic_parameter",
    "gap_info",
    "PartitionTable",
    "build_tables",
    "series_coefficients_check",
    "EntanglementSpectrum",
    "EntropyValue",
    "Representation",
    "critical_scaling_probe",
    "exact_spectrum",
    "fit_scaling_exponent",
    "max_representable_levels",
    "renyi_entropy",
    "von_neumann_entropy",
    "zeta_product",
    "SaddleData",
    "asymptotic_degeneracy",
    "cauchy_degeneracy",
    "generating_function_singularity_check",
    "saddle_radius",
    "CorrelationData",
    "OracleSource",
    "OracleSpectrum",
    "block_spectrum",
    "build_correlations",
    "compare_spectra",
    "exact_diagonalization",
    "free_fermion_ring_spectrum",
    "mode_occupations",
    "spectrum_from_modes",
    "__version__",
]
