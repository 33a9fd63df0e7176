"""Finite-difference operators realized as analytic continuation.

A shift ``exp(i*lambda_bar*d/dr)`` acts by evaluating the function at
``r + i*lambda_bar``; functions therefore carry an evaluator that accepts a
complex radial argument.  Every applier has a ``*_terms`` companion returning
the individual summands, which is what :func:`relative_residual` scales by.

Units: :class:`AnalyticFunction1D` lives on the dimensionless ``rho``;
:class:`AnalyticFunction2D` takes physical ``r`` (same units as
``config.lambda_bar``).  Momenta are in units of ``m c``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import model, specfun
from .errors import DerivativeAccuracy, StripViolation
from .model import OscillatorConfig, QuantumNumbers

__all__ = [
    "AnalyticFunction1D",
    "AnalyticFunction2D",
    "MomentumVector",
    "GaussianTestFunction",
    "shift",
    "cosh_shift",
    "sinh_shift",
    "plane_wave",
    "plane_wave_function",
    "radial_function",
    "eigenfunction_2d",
    "free_hamiltonian_terms",
    "free_hamiltonian_apply",
    "momentum_terms",
    "momentum_apply",
    "potential_terms",
    "potential_apply",
    "radial_hamiltonian_terms",
    "radial_hamiltonian_apply",
    "omega_equation_terms",
    "omega_equation_residual",
    "relative_residual",
    "nr_free_hamiltonian_apply",
    "nr_momentum_apply",
]

ComplexFn = Callable[[complex], complex]
ComplexFn2D = Callable[[complex, float], complex]

# 6th-order central stencils on offsets -3..3
_D1 = (-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60)
_D2 = (1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90)
FD_STEP = 1e-3
FD_TOLERANCE = 1e-8


@dataclass(frozen=True)
class AnalyticFunction1D:
    """Function of the dimensionless radial variable, analytic for ``|Im rho| <= strip_halfwidth``."""

    evaluator: ComplexFn
    strip_halfwidth: float = 1.0

    def __call__(self, rho) -> complex:
        rho = complex(rho)
        if abs(rho.imag) > self.strip_halfwidth + 1e-12:
            raise StripViolation(
                f"|Im rho| = {abs(rho.imag)} outside strip {self.strip_halfwidth}"
            )
        return complex(self.evaluator(rho))

    def scaled(self, factor: complex) -> "AnalyticFunction1D":
        ev = self.evaluator
        return AnalyticFunction1D(lambda z: factor * ev(z), self.strip_halfwidth)


@dataclass(frozen=True)
class AnalyticFunction2D:
    """Function of physical ``r`` (complex) and angle ``phi``.

    ``dphi``/``dphi2`` are optional exact angular derivatives.  If
    ``harmonic`` is set the function is declared proportional to
    ``e^{i m phi}`` and the angular derivatives follow from that.  Otherwise
    6th-order central differences with a Richardson consistency check are
    used.
    """

    evaluator: ComplexFn2D
    dphi: Optional[ComplexFn2D] = None
    dphi2: Optional[ComplexFn2D] = None
    harmonic: Optional[int] = None
    strip_halfwidth: float = math.inf

    def __call__(self, r, phi: float) -> complex:
        r = complex(r)
        if abs(r.imag) > self.strip_halfwidth * (1 + 1e-12):
            raise StripViolation(f"|Im r| = {abs(r.imag)} outside strip {self.strip_halfwidth}")
        return complex(self.evaluator(r, phi))

    def d_phi(self, r, phi: float) -> complex:
        if self.dphi is not None:
            return complex(self.dphi(complex(r), phi))
        if self.harmonic is not None:
            return 1j * self.harmonic * self(r, phi)
        return _fd_derivative(self, r, phi, _D1, 1)

    def d_phi2(self, r, phi: float) -> complex:
        if self.dphi2 is not None:
            return complex(self.dphi2(complex(r), phi))
        if self.harmonic is not None:
            return -(self.harmonic**2) * self(r, phi)
        return _fd_derivative(self, r, phi, _D2, 2)

    def scaled(self, factor: complex) -> "AnalyticFunction2D":
        s = lambda g: None if g is None else (lambda r, p: factor * g(r, p))  # noqa: E731
        return AnalyticFunction2D(
            s(self.evaluator), s(self.dphi), s(self.dphi2), self.harmonic, self.strip_halfwidth
        )

    def without_exact_derivatives(self) -> "AnalyticFunction2D":
        return AnalyticFunction2D(self.evaluator, strip_halfwidth=self.strip_halfwidth)


def _fd_stencil(f, r, phi, coef, order, h):
    acc = 0j
    for k, ck in zip(range(-3, 4), coef):
        if ck:
            acc += ck * f(r, phi + k * h)
    return acc / h**order


def _fd_derivative(f, r, phi, coef, order):
    fine = _fd_stencil(f, r, phi, coef, order, FD_STEP)
    coarse = _fd_stencil(f, r, phi, coef, order, 2 * FD_STEP)
    # h^6 truncation: the fine estimate is corrected by (fine - coarse)/63
    gap = abs(fine - coarse)
    if gap > FD_TOLERANCE * max(1.0, abs(fine)):
        raise DerivativeAccuracy(
            f"phi-derivative of order {order} at (r={r}, phi={phi}) not resolved: "
            f"step disagreement {gap:.3g}"
        )
    return fine + (fine - coarse) / 63.0


@dataclass(frozen=True)
class MomentumVector:
    """In-plane momentum in units of ``m c``."""

    px: float
    py: float

    @property
    def p0(self) -> float:
        return math.sqrt(self.px**2 + self.py**2 + 1.0)

    def energy(self, config: OscillatorConfig) -> float:
        return self.p0 * config.rest_energy


# -- shifts -----------------------------------------------------------------


def shift(f: AnalyticFunction1D, rho, k: int) -> complex:
    """``exp(i k d/drho) f (rho) = f(rho + i k)``."""
    return f(complex(rho) + 1j * k)


def cosh_shift(f: AnalyticFunction1D, rho) -> complex:
    return 0.5 * (shift(f, rho, 1) + shift(f, rho, -1))


def sinh_shift(f: AnalyticFunction1D, rho) -> complex:
    return 0.5 * (shift(f, rho, 1) - shift(f, rho, -1))


# -- test and eigen functions -------------------------------------------------


def _plane_wave_parts(p: MomentumVector, phi: float):
    c, s = math.cos(phi), math.sin(phi)
    base = p.p0 - p.px * c - p.py * s
    d1 = p.px * s - p.py * c
    d2 = p.px * c + p.py * s
    return base, d1, d2


def plane_wave(p: MomentumVector, rho, phi: float) -> complex:
    """Relativistic plane wave ``A^(-1/2 - i rho)`` with ``A = p0 - p.n`` (units m c)."""
    base, _, _ = _plane_wave_parts(p, phi)
    return cmath.exp((-0.5 - 1j * complex(rho)) * math.log(base))


def plane_wave_function(p: MomentumVector, config: OscillatorConfig) -> AnalyticFunction2D:
    """The plane wave as a function of physical r, with exact phi-derivatives."""
    lam = config.lambda_bar

    def value(r, phi):
        return plane_wave(p, r / lam, phi)

    def d1(r, phi):
        base, a1, _ = _plane_wave_parts(p, phi)
        s = -0.5 - 1j * r / lam
        return s * a1 / base * plane_wave(p, r / lam, phi)

    def d2(r, phi):
        base, a1, a2 = _plane_wave_parts(p, phi)
        s = -0.5 - 1j * r / lam
        q = a1 / base
        return s * (a2 / base - q * q + s * q * q) * plane_wave(p, r / lam, phi)

    return AnalyticFunction2D(value, d1, d2)


def radial_function(f: model.RadialEigenfunction) -> AnalyticFunction1D:
    return AnalyticFunction1D(lambda rho: model.radial_eval(f, rho), model.RADIAL_STRIP)


def eigenfunction_2d(config: OscillatorConfig, qn: QuantumNumbers) -> AnalyticFunction2D:
    """psi_{n m} of the full problem, declared as angular harmonic ``m``."""
    radial = model.radial_eigenfunction(config, qn)
    return AnalyticFunction2D(
        lambda r, phi: model.full_wavefunction(config, qn, r, phi, radial=radial),
        harmonic=qn.m,
        strip_halfwidth=model.RADIAL_STRIP * config.lambda_bar,
    )


@dataclass(frozen=True)
class GaussianTestFunction:
    """``exp(-(r/width)^2) e^{i m phi}``: entire in r, used for operator limits."""

    m: int = 0
    width: float = 1.0

    def radial(self, r):
        return cmath.exp(-((r / self.width) ** 2))

    def radial_d1(self, r):
        return -2.0 * r / self.width**2 * self.radial(r)

    def radial_d2(self, r):
        w2 = self.width**2
        return (4.0 * r * r / (w2 * w2) - 2.0 / w2) * self.radial(r)

    def as_function(self) -> AnalyticFunction2D:
        return AnalyticFunction2D(
            lambda r, phi: self.radial(r) * cmath.exp(1j * self.m * phi), harmonic=self.m
        )


# -- operator appliers --------------------------------------------------------


def relative_residual(terms: Sequence[complex], target: complex) -> float:
    """``|sum(terms) - target| / max |term|``.

    Scaling by the largest summand rather than by the target keeps the
    measure meaningful near zeros of the function.
    """
    scale = max((abs(t) for t in terms), default=0.0)
    err = abs(sum(terms) - target)
    if scale == 0.0:
        return 0.0 if err == 0.0 else math.inf
    return err / scale


def free_hamiltonian_terms(f: AnalyticFunction2D, r: float, phi: float,
                           config: OscillatorConfig) -> list[complex]:
    lam = config.lambda_bar
    mc2 = config.rest_energy
    up = f(r + 1j * lam, phi)
    dn = f(r - 1j * lam, phi)
    ang = f.d_phi2(r + 1j * lam, phi)
    return [
        mc2 * 0.5 * (up + dn),
        mc2 * (1j * lam / (2 * r)) * 0.5 * (up - dn),
        -mc2 * lam**2 / (r * (2 * r + 1j * lam)) * ang,
    ]


def free_hamiltonian_apply(f: AnalyticFunction2D, r: float, phi: float,
                           config: OscillatorConfig) -> complex:
    """Free relativistic Hamiltonian applied to ``f`` at ``(r, phi)``."""
    return sum(free_hamiltonian_terms(f, r, phi, config))


def momentum_terms(f: AnalyticFunction2D, r: float, phi: float,
                   config: OscillatorConfig) -> tuple[list[complex], list[complex]]:
    lam = config.lambda_bar
    mc = config.mass * config.c
    nx, ny = math.cos(phi), math.sin(phi)
    h0 = free_hamiltonian_terms(f, r, phi, config)
    up = f(r + 1j * lam, phi)
    d_up = f.d_phi(r + 1j * lam, phi)
    radial_part = [t / config.rest_energy for t in h0] + [-up]
    fac = config.hbar / (r + 0.5j * lam)
    mx = 1j * (-ny) * d_up
    my = 1j * nx * d_up
    tx = [mc * nx * t for t in radial_part] + [-mx * fac]
    ty = [mc * ny * t for t in radial_part] + [-my * fac]
    return tx, ty


def momentum_apply(f: AnalyticFunction2D, r: float, phi: float,
                   config: OscillatorConfig) -> tuple[complex, complex]:
    """Cartesian components of the relativistic momentum operator applied to ``f``."""
    tx, ty = momentum_terms(f, r, phi, config)
    return sum(tx), sum(ty)


def potential_terms(f: AnalyticFunction2D, r: float, phi: float,
                    config: OscillatorConfig) -> list[complex]:
    lam = config.lambda_bar
    pref = 0.5 * config.mass * config.omega**2 * (r + 1j * lam) / (r + 0.5j * lam)
    rs = r + 1j * lam
    return [
        pref * r * (r + 1j * lam) * f(rs, phi),
        -pref * lam**2 * config.b * f.d_phi2(rs, phi),
    ]


def potential_apply(f: AnalyticFunction2D, r: float, phi: float,
                    config: OscillatorConfig) -> complex:
    """Oscillator potential (one r-shift plus the b-weighted angular term) applied to ``f``."""
    return sum(potential_terms(f, r, phi, config))


def _rho2(rho: float) -> complex:
    gd = specfun.generalized_degree(rho, 2)
    direct = rho * (rho + 1j)
    if abs(gd - direct) > 1e-10 * abs(direct):
        raise ArithmeticError(f"generalized degree rho^(2) inconsistent at rho={rho}: {gd} vs {direct}")
    return gd


def radial_hamiltonian_terms(g: AnalyticFunction1D, rho: float, qn: QuantumNumbers,
                             config: OscillatorConfig) -> list[complex]:
    om = config.omega0
    a = qn.a
    gam = qn.gamma(config.b)
    p2 = _rho2(rho)
    up = shift(g, rho, 1)
    dn = shift(g, rho, -1)
    return [
        0.5 * up,
        0.5 * dn,
        a / (2 * p2) * up,
        0.5 * om * om * (p2 + gam) * up,
    ]


def radial_hamiltonian_apply(g: AnalyticFunction1D, rho: float, qn: QuantumNumbers,
                             config: OscillatorConfig) -> complex:
    """Dimensionless radial Hamiltonian applied to ``g``; eigenvalue is E/(m c^2)."""
    return sum(radial_hamiltonian_terms(g, rho, qn, config))


def omega_equation_terms(alpha: float, nu: float, e_over_hw: float, n: int,
                         rho: float) -> list[complex]:
    """Summands of the polynomial-factor difference equation, moved to one side."""
    omega = lambda z: specfun.cdh_poly(n, z * z, alpha, nu, 0.5)  # noqa: E731
    return [
        (alpha + 1j * rho) * (nu + 1j * rho) * omega(rho - 1j),
        -(alpha - 1j * rho) * (nu - 1j * rho) * omega(rho + 1j),
        -2j * rho * e_over_hw * omega(complex(rho)),
    ]


def omega_equation_residual(alpha: float, nu: float, e_over_hw: float, n: int,
                            rho: float) -> complex:
    """Residual of the first-order difference equation for the polynomial factor.

    With ``Omega = S_n(rho^2; alpha, nu, 1/2)``::

        (alpha + i rho)(nu + i rho) Omega(rho - i)
            - (alpha - i rho)(nu - i rho) Omega(rho + i)
            - 2 i rho (E / hbar omega) Omega(rho)

    vanishes exactly when ``E/hbar omega = 2n + alpha + nu``.
    """
    return sum(omega_equation_terms(alpha, nu, e_over_hw, n, rho))


# -- non-relativistic reference operators --------------------------------------


def nr_free_hamiltonian_apply(f: GaussianTestFunction, r: float, phi: float,
                              config: OscillatorConfig) -> complex:
    """``-(hbar^2/2m)(d_r^2 + d_r/r + d_phi^2/r^2) f`` with exact derivatives."""
    ang = cmath.exp(1j * f.m * phi)
    lap = f.radial_d2(r) + f.radial_d1(r) / r - f.m**2 * f.radial(r) / r**2
    return -(config.hbar**2) / (2 * config.mass) * lap * ang


def nr_momentum_apply(f: GaussianTestFunction, r: float, phi: float,
                      config: OscillatorConfig) -> tuple[complex, complex]:
    """``-hbar (i n d_r + m_vec / r) f`` with ``m_vec = i(-sin, cos) d_phi``."""
    ang = cmath.exp(1j * f.m * phi)
    val = f.radial(r) * ang
    d_r = f.radial_d1(r) * ang
    d_phi = 1j * f.m * val
    nx, ny = math.cos(phi), math.sin(phi)
    mx, my = 1j * (-ny) * d_phi, 1j * nx * d_phi
    return (
        -config.hbar * (1j * nx * d_r + mx / r),
        -config.hbar * (1j * ny * d_r + my / r),
    )
