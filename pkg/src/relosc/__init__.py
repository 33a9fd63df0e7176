"""Exactly solvable finite-difference model of the 2D relativistic harmonic oscillator.

Modules: :mod:`specfun` (gamma kernel, generalized degree, orthogonal
polynomials), :mod:`model` (spectrum and eigenfunctions), :mod:`fdops`
(finite-difference operators), :mod:`angular` (exact angular operator
algebra), :mod:`quadrature`, :mod:`verify` and :mod:`cli`.
"""

from .errors import (
    ComplexExponentError,
    DerivativeAccuracy,
    DomainError,
    NonConvergence,
    ParameterError,
    PoleError,
    RelOscError,
    StripViolation,
    TruncationWarning,
)
from .model import OscillatorConfig, QuantumNumbers, energy, radial_eigenfunction, spectral_constants
from .verify import GridSpec, VerificationReport, run_all

__version__ = "0.1.0"

__all__ = [
    "ComplexExponentError",
    "DerivativeAccuracy",
    "DomainError",
    "NonConvergence",
    "ParameterError",
    "PoleError",
    "RelOscError",
    "StripViolation",
    "TruncationWarning",
    "OscillatorConfig",
    "QuantumNumbers",
    "energy",
    "radial_eigenfunction",
    "spectral_constants",
    "GridSpec",
    "VerificationReport",
    "run_all",
]
