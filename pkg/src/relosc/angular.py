"""Exact operator algebra on the circle.

Operators built from ``cos(phi)``, ``sin(phi)`` and ``d/dphi`` act on finite
Fourier sums ``sum_k c_k e^{ik phi}`` whose coefficients are Gaussian
rationals.  All arithmetic is exact; operator equality is decided
extensionally on the harmonics ``|k| <= K``, which is exact because every
primitive is banded.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, Union

from .errors import TruncationWarning

__all__ = [
    "GaussianRational",
    "TrigPolynomial",
    "AngularOperator",
    "Nx",
    "Ny",
    "Mx",
    "My",
    "L",
    "Id",
    "ZERO",
    "I_UNIT",
    "apply",
    "commutator",
    "adjoint",
    "operators_equal",
    "matrix",
    "canonical_form",
    "DEFAULT_WINDOW",
]

DEFAULT_WINDOW = 8


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls(Fraction(value), Fraction(0))
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, float):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    @staticmethod
    def _coerce(value):
        try:
            return GaussianRational.of(value)
        except TypeError:
            return None

    def __add__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}i" if mag.denominator == 1 else f"({mag})i"
        if not self.re:
            return imag if self.im > 0 else f"-{imag}"
        return f"({self.re}{'+' if self.im > 0 else '-'}{imag})"

    __repr__ = __str__


I_UNIT = GaussianRational(0, 1)
_HALF = Fraction(1, 2)


class TrigPolynomial:
    """Finite Fourier sum ``sum_k coeffs[k] e^{ik phi}``; zero coefficients pruned."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Dict[int, object], Iterable] = ()):
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        c: Dict[int, GaussianRational] = {}
        for k, v in items:
            v = GaussianRational.of(v)
            total = c.get(int(k), GaussianRational()) + v
            if total:
                c[int(k)] = total
            else:
                c.pop(int(k), None)
        self._c = c

    @classmethod
    def basis(cls, k: int) -> "TrigPolynomial":
        return cls({k: 1})

    @property
    def coeffs(self) -> Dict[int, GaussianRational]:
        return dict(self._c)

    def __getitem__(self, k: int) -> GaussianRational:
        return self._c.get(k, GaussianRational())

    def support(self):
        return sorted(self._c)

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return TrigPolynomial(list(self._c.items()) + list(other._c.items()))

    def __neg__(self):
        return TrigPolynomial({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TrigPolynomial":
        s = GaussianRational.of(s)
        return TrigPolynomial({k: s * v for k, v in self._c.items()})

    def __mul__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        out = []
        for j, a in self._c.items():
            for k, b in other._c.items():
                out.append((j + k, a * b))
        return TrigPolynomial(out)

    def __eq__(self, other):
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self._c == other._c

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{self._c[k]}·e^({k}iφ)" for k in sorted(self._c))

    def __str__(self):
        return format_trig(self)


def format_trig(p: TrigPolynomial) -> str:
    """Render in cos/sin form: ``c0 + sum_k (A_k cos kφ + B_k sin kφ)``."""
    parts = []
    c0 = p[0]
    if c0:
        parts.append(str(c0))
    top = max((abs(k) for k in p.support()), default=0)
    for k in range(1, top + 1):
        plus, minus = p[k], p[-k]
        cos_c = plus + minus
        sin_c = (plus - minus) * I_UNIT
        arg = "φ" if k == 1 else f"{k}φ"
        if cos_c:
            parts.append(f"{_coef(cos_c)}cos({arg})")
        if sin_c:
            parts.append(f"{_coef(sin_c)}sin({arg})")
    return _join(parts)


def _join(parts) -> str:
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def _coef(c: GaussianRational) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}·"


# -- operators ----------------------------------------------------------------


def _mul_cos(f: TrigPolynomial) -> TrigPolynomial:
    out = []
    for k, v in f.coeffs.items():
        h = v * _HALF
        out += [(k + 1, h), (k - 1, h)]
    return TrigPolynomial(out)


def _mul_sin(f: TrigPolynomial) -> TrigPolynomial:
    # sin = (e^{i phi} - e^{-i phi}) / (2i)
    out = []
    for k, v in f.coeffs.items():
        h = v * GaussianRational(0, -_HALF)
        out += [(k + 1, h), (k - 1, -h)]
    return TrigPolynomial(out)


def _deriv(f: TrigPolynomial) -> TrigPolynomial:
    return TrigPolynomial({k: v * GaussianRational(0, k) for k, v in f.coeffs.items()})


class AngularOperator:
    """Expression tree over the angular primitives.

    ``a * b`` is composition (``b`` acts first); scalars multiply from either
    side; ``+``/``-`` add.  ``a ** k`` composes ``a`` with itself.
    """

    # bandwidth: maximal harmonic shift; order: maximal derivative order
    bandwidth: int = 0
    order: int = 0

    def __call__(self, f: TrigPolynomial) -> TrigPolynomial:  # pragma: no cover - abstract
        raise NotImplementedError

    def __add__(self, other):
        return _Sum((self, _as_op(other)))

    def __radd__(self, other):
        return _Sum((_as_op(other), self))

    def __sub__(self, other):
        return _Sum((self, _Scaled(GaussianRational(-1), _as_op(other))))

    def __rsub__(self, other):
        return _as_op(other) - self

    def __neg__(self):
        return _Scaled(GaussianRational(-1), self)

    def __mul__(self, other):
        if isinstance(other, AngularOperator):
            return _Product((self, other))
        return _Scaled(GaussianRational.of(other), self)

    def __rmul__(self, other):
        return _Scaled(GaussianRational.of(other), self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative operator power")
        if k == 0:
            return Id
        return _Product((self,) * k)


def _as_op(x) -> AngularOperator:
    if isinstance(x, AngularOperator):
        return x
    return _Scaled(GaussianRational.of(x), Id)


class _Primitive(AngularOperator):
    def __init__(self, name: str, fn: Callable[[TrigPolynomial], TrigPolynomial],
                 bandwidth: int, order: int):
        self.name, self._fn, self.bandwidth, self.order = name, fn, bandwidth, order

    def __call__(self, f):
        return self._fn(f)

    def __repr__(self):
        return self.name


class _Scaled(AngularOperator):
    def __init__(self, s: GaussianRational, op: AngularOperator):
        self.s, self.op = s, op
        self.bandwidth, self.order = op.bandwidth, op.order

    def __call__(self, f):
        return self.op(f).scale(self.s)

    def __repr__(self):
        return f"{self.s}·{self.op!r}"


class _Sum(AngularOperator):
    def __init__(self, terms):
        self.terms = tuple(terms)
        self.bandwidth = max(t.bandwidth for t in self.terms)
        self.order = max(t.order for t in self.terms)

    def __call__(self, f):
        out = TrigPolynomial()
        for t in self.terms:
            out = out + t(f)
        return out

    def __repr__(self):
        return "(" + " + ".join(map(repr, self.terms)) + ")"


class _Product(AngularOperator):
    def __init__(self, factors):
        self.factors = tuple(factors)
        self.bandwidth = sum(t.bandwidth for t in self.factors)
        self.order = sum(t.order for t in self.factors)

    def __call__(self, f):
        for t in reversed(self.factors):
            f = t(f)
        return f

    def __repr__(self):
        return "".join(map(repr, self.factors))


class _Adjoint(AngularOperator):
    """Exact adjoint for the inner product ``<e^{ij phi}, e^{ik phi}> = 2 pi delta_jk``.

    ``(A^+)[k, j] = conj(A[j, k])``; for input harmonic ``j`` only outputs
    ``|k - j| <= bandwidth`` can be nonzero, so each is obtained by applying
    ``A`` to one basis function.
    """

    def __init__(self, op: AngularOperator):
        self.op = op
        self.bandwidth, self.order = op.bandwidth, op.order

    def __call__(self, f):
        out = []
        bw = self.bandwidth
        for j, v in f.coeffs.items():
            for k in range(j - bw, j + bw + 1):
                a_jk = self.op(TrigPolynomial.basis(k))[j]
                if a_jk:
                    out.append((k, a_jk.conjugate() * v))
        return TrigPolynomial(out)

    def __repr__(self):
        return f"({self.op!r})⁺"


Id = _Primitive("1", lambda f: f, 0, 0)
Nx = _Primitive("n_x", _mul_cos, 1, 0)
Ny = _Primitive("n_y", _mul_sin, 1, 0)
Mx = _Primitive("m_x", lambda f: _mul_sin(_deriv(f)).scale(GaussianRational(0, -1)), 1, 1)
My = _Primitive("m_y", lambda f: _mul_cos(_deriv(f)).scale(I_UNIT), 1, 1)
L = _Primitive("L", lambda f: _deriv(f).scale(GaussianRational(0, -1)), 0, 1)
ZERO = _Scaled(GaussianRational(0), Id)


def apply(op: AngularOperator, f: TrigPolynomial) -> TrigPolynomial:
    return op(f)


def commutator(a: AngularOperator, b: AngularOperator) -> AngularOperator:
    return a * b - b * a


def adjoint(op: AngularOperator) -> AngularOperator:
    if isinstance(op, _Adjoint):
        return op.op
    return _Adjoint(op)


def operators_equal(a: AngularOperator, b: AngularOperator, window: int = DEFAULT_WINDOW) -> bool:
    """Extensional equality on ``e^{ik phi}``, ``|k| <= window``."""
    return all(a(TrigPolynomial.basis(k)) == b(TrigPolynomial.basis(k))
               for k in range(-window, window + 1))


def matrix(op: AngularOperator, window: int = DEFAULT_WINDOW):
    """Matrix ``A[j][k]`` (output harmonic j, input k) on ``|j|, |k| <= window``.

    Emits :class:`TruncationWarning` when some column has weight outside the
    window; those entries are dropped from the returned matrix.
    """
    ks = range(-window, window + 1)
    rows = {j: {} for j in ks}
    leaked = False
    for k in ks:
        out = op(TrigPolynomial.basis(k))
        for j, v in out.coeffs.items():
            if abs(j) > window:
                leaked = True
                continue
            rows[j][k] = v
    if leaked:
        warnings.warn(
            f"operator couples harmonics beyond |k| <= {window}; grow the window by "
            f"{op.bandwidth}", TruncationWarning, stacklevel=2,
        )
    return [[rows[j].get(k, GaussianRational()) for k in ks] for j in ks]


# -- canonical form -----------------------------------------------------------


def _lagrange_coeffs(points, values):
    """Exact monomial coefficients of the interpolating polynomial."""
    n = len(points)
    coeffs = [GaussianRational() for _ in range(n)]
    for i, (xi, yi) in enumerate(zip(points, values)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
            denom *= xi - xj
        for d, b in enumerate(basis):
            coeffs[d] = coeffs[d] + yi * (b / denom)
    return coeffs


def canonical_form(op: AngularOperator):
    """Write ``op`` as ``sum_j g_j(phi) L^j`` with trig-polynomial ``g_j``.

    Since ``op e^{ik phi} = sum_j g_j(phi) k^j e^{ik phi}``, each Fourier
    coefficient of ``e^{-ik phi} op e^{ik phi}`` is a polynomial in ``k`` of
    degree ``<= op.order``; exact interpolation recovers the ``g_j``.

    Returns:
        list of TrigPolynomial, index j holding the coefficient of ``L^j``.
    """
    deg = op.order
    ks = list(range(-(deg // 2), deg - deg // 2 + 1))
    samples = []
    for k in ks:
        out = op(TrigPolynomial.basis(k))
        samples.append({h - k: v for h, v in out.coeffs.items()})
    harmonics = sorted(set().union(*samples))
    g = [dict() for _ in range(deg + 1)]
    for h in harmonics:
        vals = [s.get(h, GaussianRational()) for s in samples]
        for j, c in enumerate(_lagrange_coeffs([Fraction(k) for k in ks], vals)):
            if c:
                g[j][h] = c
    return [TrigPolynomial(gj) for gj in g]


def format_canonical(op: AngularOperator) -> str:
    """Human-readable canonical form, e.g. ``-i·L``."""
    parts = []
    for j, gj in enumerate(canonical_form(op)):
        if not gj:
            continue
        coef = format_trig(gj)
        if j > 0 and (" + " in coef or " - " in coef):
            coef = f"({coef})"
        if j == 0:
            parts.append(coef)
        else:
            lpow = "L" if j == 1 else f"L^{j}"
            parts.append(lpow if coef == "1" else f"-{lpow}" if coef == "-1" else f"{coef}·{lpow}")
    return _join(parts)
