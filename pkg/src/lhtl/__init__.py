"""Quantized lossless left-handed transmission line: classical dispersion,
thermal Fock-state current fluctuations and the negative refractive index,
with a truncated Fock-space oracle for the closed forms."""

from .classical import (
    ClassicalTlQuantities,
    LineParams,
    WaveSolution,
    cell_length,
    line_quantities,
    wave_residual,
)
from .errors import ConvergenceError, DomainError
from .expm import matrix_exponential
from .nri import (
    CellContext,
    FluctuationResult,
    NriMethod,
    NriResult,
    consistency_report,
    current_fluctuation,
    current_prefactor_sq,
    fluctuation_bracket,
    nri,
    nri_chain,
    nri_eq11,
    nri_zero_T_limit,
)
from .thermal import (
    BogoliubovParams,
    ThermalFockSpec,
    ThetaConvention,
    energy_ratio,
    thermal_photon_number,
    theta_from_n0,
)
from .units import NATURAL, SI, FrequencyConvention, FrequencySpec, UnitSystem, to_angular

__version__ = "0.1.0"
