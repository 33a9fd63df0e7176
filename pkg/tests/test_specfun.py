"""Special functions against independent oracles (mpmath, scipy)."""

import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from relosc import specfun
from relosc.errors import DomainError, ParameterError, PoleError

mpmath.mp.dps = 30


def mp_loggamma(z):
    return complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))


# required accuracy strip: Re z in [-20, 50], |Im z| <= 50
strip_points = st.builds(
    complex,
    st.floats(-20, 50, allow_nan=False),
    st.floats(-50, 50, allow_nan=False),
).filter(lambda z: min(abs(z - k) for k in range(-21, 1)) > 1e-3)


@settings(max_examples=300, deadline=None)
@given(strip_points)
def test_log_gamma_matches_mpmath_principal_branch(z):
    got = specfun.log_gamma(z)
    want = mp_loggamma(z)
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 10.0, 0.5 + 3j, 1e-8 + 0j])
def test_log_gamma_real_axis_values(z):
    assert abs(specfun.log_gamma(z) - mp_loggamma(complex(z))) < 1e-13


@pytest.mark.parametrize("k", [0, -1, -2, -17])
def test_gamma_pole_raises(k):
    with pytest.raises(PoleError):
        specfun.log_gamma(k)
    with pytest.raises(PoleError):
        specfun.gamma(complex(k, 0))


def test_log_gamma_rejects_non_finite():
    with pytest.raises(DomainError):
        specfun.log_gamma(complex(math.nan, 0))


@settings(max_examples=100, deadline=None)
@given(st.floats(-15, 40), st.floats(-40, 40))
def test_log_gamma_recurrence(x, y):
    z = complex(x, y)
    if min(abs(z - k) for k in range(-16, 2)) < 1e-2:
        return
    ratio = cmath.exp(specfun.log_gamma(z + 1) - specfun.log_gamma(z))
    assert abs(ratio / z - 1) < 1e-12


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 11.0])
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_generalized_degree_integer_is_rising_product(x, k):
    prod = 1 + 0j
    for j in range(k):
        prod *= x + 1j * j
    assert abs(specfun.generalized_degree(x, k) - prod) <= 1e-12 * abs(prod)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 60))
def test_rho_second_degree(rho):
    assert abs(specfun.generalized_degree(rho, 2) - rho * (rho + 1j)) <= 1e-12 * rho * (rho + 1)


def test_generalized_degree_against_mpmath_half():
    for x in (-0.3, -2.0, -7.5):
        want = complex(mpmath.expjpi(0.25) * mpmath.gamma(-1j * x + 0.5) / mpmath.gamma(-1j * x))
        assert abs(specfun.generalized_degree(x, 0.5) - want) < 1e-12 * abs(want)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 30))
def test_weight_is_tanh(rho):
    assert specfun.weight_function(rho) == pytest.approx(math.tanh(math.pi * rho), abs=1e-12)


def test_weight_spot_value_and_domain():
    assert abs(specfun.weight_function(1.0) - math.tanh(math.pi)) < 1e-10
    with pytest.raises(DomainError):
        specfun.weight_function(0.0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-2, 40))
def test_measure_collapse_identity(rho):
    g = specfun.generalized_degree(-rho, 0.5)
    assert specfun.weight_function(rho) * rho / abs(g) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_m_factor_definition():
    rho, nu, om = 1.3, 3.2, 0.2
    want = complex(mpmath.power(om, 1j * rho) * mpmath.gamma(1j * rho + nu))
    assert abs(specfun.m_factor(rho, nu, om) - want) < 1e-12 * abs(want)
    with pytest.raises(DomainError):
        specfun.m_factor(rho, nu, 0.0)


def test_pochhammer():
    assert specfun.pochhammer(3, 0) == 1
    assert specfun.pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert specfun.pochhammer(0.5, 2) == pytest.approx(0.75)


def mp_cdh(n, x2, a, b, c):
    x = mpmath.sqrt(mpmath.mpc(x2))
    pref = mpmath.rf(a + b, n) * mpmath.rf(a + c, n)
    return complex(pref * mpmath.hyp3f2(-n, a + 1j * x, a - 1j * x, a + b, a + c, 1))


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("x2", [0.0, 0.7, 9.0, 144.0, 2.0 + 3.0j])
def test_cdh_poly_matches_hypergeometric(n, x2):
    a, b, c = 0.8, 5.3, 0.5
    got = specfun.cdh_poly(n, x2, a, b, c)
    want = mp_cdh(n, x2, a, b, c)
    assert abs(got - want) <= 1e-11 * max(1.0, abs(want))


def test_cdh_poly_low_degrees_closed_form():
    a, b, c, x2 = 0.7, 1.9, 0.5, 2.3
    assert specfun.cdh_poly(0, x2, a, b, c) == 1
    # S_1 = (a+b)(a+c) - (a^2 + x^2)
    assert specfun.cdh_poly(1, x2, a, b, c) == pytest.approx((a + b) * (a + c) - (a * a + x2))


def test_cdh_poly_parameter_errors():
    with pytest.raises(ParameterError):
        specfun.cdh_poly(-1, 1.0, 0.5, 0.5, 0.5)
    with pytest.raises(ParameterError):
        specfun.cdh_poly(3, 1.0, -0.5, -0.5, 1.0)


@pytest.mark.parametrize("n", range(8))
@pytest.mark.parametrize("mu", [0, 1, 2.5, 3])
@pytest.mark.parametrize("x", [0.0, 0.4, 1.0, 3.7, 12.0])
def test_laguerre_matches_scipy(n, mu, x):
    want = special.eval_genlaguerre(n, mu, x)
    assert specfun.laguerre(n, mu, x) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_laguerre_spot_value():
    # L_2^0(1) = 1 - 2 + 1/2
    assert specfun.laguerre(2, 0, 1.0) == pytest.approx(-0.5, abs=1e-15)
