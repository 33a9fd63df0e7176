"""Relativistic finite-difference oscillator in two dimensions.

Internally everything is dimensionless (hbar = mass = c = 1), with
``omega0 = hbar*omega/(mass*c^2)`` the only physical knob and
``rho = r/lambda_bar`` the radial variable.  :class:`OscillatorConfig`
carries the physical constants and converts at the boundary.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import specfun
from .errors import ComplexExponentError, DomainError, PoleError, StripViolation

__all__ = [
    "OscillatorConfig",
    "QuantumNumbers",
    "SpectralConstants",
    "RadialEigenfunction",
    "spectral_constants",
    "validity_radicands",
    "energy",
    "radial_eigenfunction",
    "radial_eval",
    "radial_modulus",
    "full_wavefunction",
    "full_wavefunction_modulus",
    "nr_energy",
    "nr_norm_const",
    "nr_wavefunction",
    "RADIAL_STRIP",
]

# |Im rho| up to which radial_eval is guaranteed analytic and pole free.
RADIAL_STRIP = 2.0


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical constants of the model.

    ``b`` is the dimensionless coefficient of the angular term in the
    potential.  Use :meth:`dimensionless` for hbar = mass = c = 1.
    """

    mass: float
    omega: float
    c: float
    hbar: float
    b: float = 0.0

    def __post_init__(self):
        for name in ("mass", "omega", "c", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")
        if not math.isfinite(self.b):
            raise DomainError(f"b must be finite, got {self.b!r}")

    @classmethod
    def dimensionless(cls, omega0: float, b: float = 0.0) -> "OscillatorConfig":
        return cls(mass=1.0, omega=float(omega0), c=1.0, hbar=1.0, b=float(b))

    @property
    def lambda_bar(self) -> float:
        """Compton wavelength hbar/(m c)."""
        return self.hbar / (self.mass * self.c)

    @property
    def omega0(self) -> float:
        return self.hbar * self.omega / (self.mass * self.c**2)

    @property
    def rest_energy(self) -> float:
        return self.mass * self.c**2

    @property
    def hbar_omega(self) -> float:
        return self.hbar * self.omega

    @property
    def nr_length(self) -> float:
        """Oscillator length sqrt(hbar/(m omega)); xi = r / nr_length."""
        return math.sqrt(self.hbar / (self.mass * self.omega))


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number ``n`` and angular quantum number ``m``."""

    n: int
    m: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if int(self.m) != self.m:
            raise DomainError(f"m must be an integer, got {self.m!r}")

    @property
    def a(self) -> float:
        return self.m**2 - 0.25

    def gamma(self, b: float) -> float:
        return b * self.m**2


@dataclass(frozen=True)
class SpectralConstants:
    alpha: float
    nu: float


def validity_radicands(omega0: float, b: float, m: int) -> dict[str, float]:
    """The three radicands entering alpha and nu.

    Keys ``discriminant``, ``alpha`` and ``nu``; all must be non-negative for
    the exact solution to exist.  The alpha radicand is formed without the
    catastrophic cancellation of ``S - sqrt(D)`` at small omega0.
    """
    a = m * m - 0.25
    s = b * m * m + 1.0 / omega0**2
    disc = s * s - 4.0 * a / omega0**2
    if disc < 0:
        return {"discriminant": disc, "alpha": math.nan, "nu": math.nan}
    root = math.sqrt(disc)
    if s + root != 0:
        lower = (4.0 * a / omega0**2) / (s + root)  # == s - root
    else:
        lower = s - root
    return {
        "discriminant": disc,
        "alpha": 1.0 + 2.0 * lower,
        "nu": 1.0 + 2.0 * (s + root),
    }


def spectral_constants(config: OscillatorConfig, qn: QuantumNumbers) -> SpectralConstants:
    """alpha (minus branch) and nu (plus branch) for the given state.

    This is the single gate deciding whether ``(omega0, b, m)`` is inside the
    exactly solvable regime.

    Raises:
        ComplexExponentError: a radicand is negative.
    """
    rad = validity_radicands(config.omega0, config.b, qn.m)
    for which in ("discriminant", "alpha", "nu"):
        if rad[which] < 0:
            raise ComplexExponentError(rad[which], which)
    alpha = 0.5 + 0.5 * math.sqrt(rad["alpha"])
    nu = 0.5 + 0.5 * math.sqrt(rad["nu"])
    return SpectralConstants(alpha, nu)


def energy(config: OscillatorConfig, qn: QuantumNumbers) -> float:
    """Total energy hbar*omega*(2n + alpha + nu), rest energy included."""
    sc = spectral_constants(config, qn)
    return config.hbar_omega * (2 * qn.n + sc.alpha + sc.nu)


@dataclass(frozen=True)
class RadialEigenfunction:
    config: OscillatorConfig
    qn: QuantumNumbers
    constants: SpectralConstants
    norm_const: float
    log_norm: float = field(repr=False)


def _log_norm(n: int, alpha: float, nu: float) -> float:
    lg = lambda z: specfun.log_gamma(z).real  # noqa: E731
    return 0.5 * (
        math.log(2.0) - lg(n + 1) - lg(n + alpha + nu) - lg(n + alpha + 0.5) - lg(n + nu + 0.5)
    )


def radial_eigenfunction(config: OscillatorConfig, qn: QuantumNumbers) -> RadialEigenfunction:
    sc = spectral_constants(config, qn)
    log_c = _log_norm(qn.n, sc.alpha, sc.nu)
    return RadialEigenfunction(config, qn, sc, math.exp(log_c), log_c)


def _log_envelope(f: RadialEigenfunction, rho: complex) -> complex:
    # log of (-rho)^(alpha) * M_nu(rho), without C and S_n
    alpha, nu = f.constants.alpha, f.constants.nu
    w = 1j * rho
    return (
        0.5j * math.pi * alpha
        + specfun.log_gamma(w + alpha)
        - specfun.log_gamma(w)
        + w * math.log(f.config.omega0)
        + specfun.log_gamma(w + nu)
    )


def _poly(f: RadialEigenfunction, rho: complex) -> complex:
    sc = f.constants
    return specfun.cdh_poly(f.qn.n, rho * rho, sc.alpha, sc.nu, 0.5)


def radial_eval(f: RadialEigenfunction, rho) -> complex:
    """``R(rho) = C (-rho)^(alpha) M_nu(rho) S_n(rho^2; alpha, nu, 1/2)`` for complex rho.

    Zeros of ``1/Gamma(i rho)`` (``rho = 0, i, 2i, ...``) give exactly 0.
    """
    rho = complex(rho)
    if abs(rho.imag) > RADIAL_STRIP:
        raise StripViolation(f"|Im rho| = {abs(rho.imag)} exceeds strip {RADIAL_STRIP}")
    w = 1j * rho
    if specfun._is_pole(w):
        sc = f.constants
        if specfun._is_pole(w + sc.alpha) or specfun._is_pole(w + sc.nu):
            raise PoleError(w)
        return 0j
    return f.norm_const * cmath.exp(_log_envelope(f, rho)) * _poly(f, rho)


def radial_modulus(f: RadialEigenfunction, rho: float) -> float:
    """Phase-free radial function ``C |(-rho)^(alpha) M_nu(rho)| S_n(rho^2)`` for real rho > 0."""
    rho = float(rho)
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    log_mod = _log_envelope(f, rho).real + f.log_norm
    return math.exp(log_mod) * _poly(f, rho).real


def full_wavefunction(config: OscillatorConfig, qn: QuantumNumbers, r, phi: float,
                      radial: RadialEigenfunction | None = None) -> complex:
    """``psi(r, phi) = R(rho) / (-rho)^(1/2) * e^{i m phi} / sqrt(2 pi) / lambda_bar``.

    ``r`` is in physical length units and may be complex.  The ``1/lambda_bar``
    makes psi unit-normalized against ``w(r) d^2r`` in physical units; it is
    1 in dimensionless mode.
    """
    f = radial if radial is not None else radial_eigenfunction(config, qn)
    lam = config.lambda_bar
    rho = complex(r) / lam
    w = 1j * rho
    if specfun._is_pole(w):
        raise PoleError(w)
    log_g = specfun.log_generalized_degree(-rho, 0.5)
    angular = cmath.exp(1j * qn.m * phi) / math.sqrt(2.0 * math.pi)
    log_r = _log_envelope(f, rho) + f.log_norm
    return cmath.exp(log_r - log_g) * _poly(f, rho) * angular / lam


def full_wavefunction_modulus(config: OscillatorConfig, qn: QuantumNumbers, r: float,
                              radial: RadialEigenfunction | None = None) -> float:
    """Radial part of psi in the phase-free form, carrying the sign of S_n.

    This is the quantity whose non-relativistic limit is the signed radial
    profile of :func:`nr_wavefunction`.
    """
    f = radial if radial is not None else radial_eigenfunction(config, qn)
    lam = config.lambda_bar
    rho = float(r) / lam
    log_g = specfun.log_generalized_degree(-rho, 0.5).real
    log_mod = _log_envelope(f, rho).real + f.log_norm - log_g
    return math.exp(log_mod) * _poly(f, rho).real / math.sqrt(2.0 * math.pi) / lam


def nr_energy(config: OscillatorConfig, qn: QuantumNumbers) -> float:
    return config.hbar_omega * (2 * qn.n + abs(qn.m) + 1)


def nr_norm_const(config: OscillatorConfig, qn: QuantumNumbers) -> float:
    n, mu = qn.n, abs(qn.m)
    log_c2 = (
        math.log(2.0 * config.mass * config.omega / config.hbar)
        + math.lgamma(n + 1)
        - math.lgamma(n + mu + 1)
    )
    return math.exp(0.5 * log_c2)


def nr_wavefunction(config: OscillatorConfig, qn: QuantumNumbers, r: float, phi: float) -> complex:
    """Non-relativistic 2D oscillator eigenfunction with Laguerre radial part."""
    mu = abs(qn.m)
    xi = float(r) / config.nr_length
    radial = nr_norm_const(config, qn) * xi**mu * math.exp(-0.5 * xi * xi)
    radial *= specfun.laguerre(qn.n, mu, xi * xi)
    return radial * cmath.exp(1j * qn.m * phi) / math.sqrt(2.0 * math.pi)
