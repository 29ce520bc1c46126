import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from modcrown.errors import DomainError, FitError
from modcrown.spherical import (
    Constant,
    F4_20,
    LogRate,
    PowerPrefactor,
    RootData,
    So1n,
    Sp1n,
    SphericalParam,
    Su1n,
    boundary_asymptotics,
    chi_boundary_asymptotics,
    chi_spherical,
    growth_exponent_fit,
    kostant_positive,
    min_gram_eigenvalue,
    parse_algebra,
    root_data,
    spherical,
    spherical_imaginary_time,
)
from modcrown.special import gamma_fn

SO13 = root_data(So1n(3))
SU11 = root_data(Su1n(1))
SP12 = root_data(Sp1n(2))
ALGEBRAS = [So1n(2), So1n(3), So1n(5), Su1n(1), Su1n(2), Su1n(3), Sp1n(1), Sp1n(2), F4_20()]


def series(a, b, c, z, terms=400):
    """Plain hypergeometric sum, usable for |z| < 1."""
    total, term = 0j, 1 + 0j
    for k in range(terms):
        total += term
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
    return total


def test_root_data():
    assert SO13 == RootData(2, 0) and SO13.rho == 1 and SO13.c == Fraction(3, 2)
    assert SU11.rho == Fraction(1, 2) and SU11.s0 == Fraction(1, 2)
    d = root_data(Su1n(2))
    assert (d.m_alpha, d.m_half, d.rho, d.s0) == (1, 2, 1, 1)
    assert (SP12.m_alpha, SP12.m_half, SP12.rho) == (3, 4, Fraction(5, 2))
    assert SP12.s0 == Fraction(3, 2)
    f4 = root_data(F4_20())
    assert (f4.rho, f4.s0) == (Fraction(11, 2), Fraction(5, 2))


def test_parse_algebra():
    assert parse_algebra("so:3") == So1n(3)
    assert parse_algebra("SU:2") == Su1n(2)
    assert parse_algebra("sp:1") == Sp1n(1)
    assert parse_algebra("f4") == F4_20()
    with pytest.raises(ValueError):
        parse_algebra("sl:3")
    with pytest.raises(ValueError):
        So1n(1)


def test_kostant_examples():
    assert kostant_positive(SphericalParam(2j, SO13))
    assert kostant_positive(SphericalParam(0.9, SO13))
    assert not kostant_positive(SphericalParam(2.0, SU11))
    assert not kostant_positive(SphericalParam(2.0, SP12))
    assert kostant_positive(SphericalParam(2.5, SP12))
    assert not kostant_positive(SphericalParam(1 + 1j, SO13))


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_normalisation(alg):
    d = root_data(alg)
    p = SphericalParam(0.3j, d)
    assert spherical(p, 0.0) == 1
    assert spherical_imaginary_time(p, 0.0) == 1
    triv = SphericalParam(float(d.rho), d)
    assert spherical(triv, 3.0) == 1 and spherical_imaginary_time(triv, 3.0) == 1


def test_so13_closed_form():
    # on so(1,3): phi_lambda(a_t) = sinh(lambda t) / (lambda sinh t)
    for lam in (0.4, 1j, 0.3 + 0.2j):
        p = SphericalParam(lam, SO13)
        for t in (0.3, 1.0, 2.5):
            want = np.sinh(lam * t) / (lam * math.sinh(t))
            assert abs(spherical(p, t) - want) <= 1e-12 * max(1, abs(want))
            want = np.sin(lam * t) / (lam * math.sin(t))
            assert abs(spherical_imaginary_time(p, t) - want) <= 1e-11 * max(1, abs(want))


def test_against_series():
    p = SphericalParam(1j, SO13)
    want = series(1 + 1j, 1 - 1j, 1.5, -math.sinh(0.5) ** 2)
    assert abs(spherical(p, 1.0) - want) <= 1e-12


@given(st.sampled_from(ALGEBRAS), st.floats(-2, 2), st.floats(-2, 2), st.floats(0.05, 3.1))
def test_imaginary_time_against_mpmath(alg, lr, li, t):
    d = root_data(alg)
    p = SphericalParam(complex(lr, li), d)
    rho = float(d.rho)
    with mp.workdps(30):
        ref = complex(mp.hyp2f1(rho + p.lam, rho - p.lam, float(d.c), mp.sin(mp.mpf(t) / 2) ** 2))
    got = spherical_imaginary_time(p, t)
    assert abs(got - ref) <= 1e-8 * max(1.0, abs(ref))


@given(st.sampled_from(ALGEBRAS), st.floats(-2, 2), st.floats(-2, 2), st.floats(-4, 4))
def test_lambda_symmetry(alg, lr, li, t):
    d = root_data(alg)
    lam = complex(lr, li)
    a = spherical(SphericalParam(lam, d), t)
    b = spherical(SphericalParam(-lam, d), t)
    assert abs(a - b) <= 1e-12 * max(1, abs(a))


@given(st.sampled_from(ALGEBRAS), st.floats(-3, 3), st.floats(-4, 4))
def test_real_on_imaginary_axis(alg, nu, t):
    p = SphericalParam(1j * nu, root_data(alg))
    v = spherical(p, t)
    assert abs(v.imag) <= 1e-12 * max(1, abs(v))
    assert v.real > 0 or abs(nu) > 0.5


def test_imaginary_time_domain():
    with pytest.raises(DomainError):
        spherical_imaginary_time(SphericalParam(0.2, SO13), math.pi)


def test_boundary_examples():
    nu = 0.7
    form = boundary_asymptotics(SphericalParam(1j * nu, SO13))
    assert isinstance(form, PowerPrefactor) and form.power == 1
    # |Gamma(1 + i nu)|^2 = pi nu / sinh(pi nu)
    want = gamma_fn(1.5) * gamma_fn(0.5) * math.sinh(math.pi * nu) / (math.pi * nu)
    assert abs(form.limit_value - want) <= 1e-12 * abs(want)

    form = boundary_asymptotics(SphericalParam(0.3, SU11))
    assert isinstance(form, LogRate)
    assert abs(form.coefficient - 2 / (gamma_fn(0.2) * gamma_fn(0.8))) <= 1e-13
    assert isinstance(boundary_asymptotics(SphericalParam(1.0, SO13)), Constant)


@pytest.mark.parametrize("lam", [1j, 2j, 0.5, 0.3 + 0.4j])
def test_power_boundary_limit(lam):
    p = SphericalParam(lam, SO13)
    form = boundary_asymptotics(p)
    t = math.pi - 1e-7
    got = math.cos(t / 2) ** form.power * spherical_imaginary_time(p, t)
    assert abs(got - form.limit_value) <= 1e-6 * abs(form.limit_value)


def test_power_boundary_limit_higher_multiplicity():
    p = SphericalParam(0.4j, SP12)
    form = boundary_asymptotics(p)
    assert form.power == 2
    t = math.pi - 1e-5
    got = math.cos(t / 2) ** 2 * spherical_imaginary_time(p, t)
    assert abs(got / form.limit_value - 1) <= 1e-4


def test_log_boundary_rate():
    p = SphericalParam(0.3, SU11)
    form = boundary_asymptotics(p)
    eps = 1e-12
    t = math.pi - eps
    got = spherical_imaginary_time(p, t)
    # phi ~ (-2 log cos(t/2) + 2 psi(1) - psi(a) - psi(b)) / (Gamma(a) Gamma(b)),
    # written with cos(t/2) because pi - eps is not exact in floating point
    const = float(2 * mp.digamma(1) - mp.digamma(0.2) - mp.digamma(0.8))
    want = form.coefficient * (-math.log(math.cos(t / 2)) + const / 2)
    assert abs(got - want) <= 1e-6 * abs(want)


def test_chi_reduces_to_spherical():
    for n in (1, 2, 3):
        d = root_data(Su1n(n))
        for lam in (0.6j, 0.4):
            for t in (0.5, 2.0):
                a = chi_spherical(0, lam, n, t)
                b = spherical(SphericalParam(lam / 2, d), t)
                assert abs(a - b) <= 1e-12 * max(1, abs(b))
                a = chi_spherical(0, lam, n, t, imaginary=True)
                b = spherical_imaginary_time(SphericalParam(lam / 2, d), t)
                assert abs(a - b) <= 1e-10 * max(1, abs(b))


def test_chi_values():
    assert chi_spherical(2, 0.3j, 2, 0.0) == 1
    t = 1.0
    want = math.cosh(t / 2) ** -2 * series((2 - 2 + 1j) / 2, (2 - 2 - 1j) / 2, 2, -math.sinh(t / 2) ** 2)
    assert abs(chi_spherical(2, 1j, 2, t) - want) <= 1e-12
    with pytest.raises(DomainError):
        chi_spherical(1, 0.0, 2, math.pi, imaginary=True)


@pytest.mark.parametrize("ell, lam, n", [(2, 0, 2), (1, 1j, 3), (-1, 1j, 3), (3, 0.5, 1), (2, 0.7j, 2)])
def test_chi_boundary_limit(ell, lam, n):
    want = chi_boundary_asymptotics(ell, lam, n)
    t = math.pi - 1e-6
    got = math.cos(t / 2) ** abs(ell) * chi_spherical(ell, lam, n, t, imaginary=True)
    assert abs(got - want) <= 1e-4 * max(1.0, abs(want))


def test_chi_boundary_example():
    assert abs(chi_boundary_asymptotics(2, 0, 2) - 1) <= 1e-14
    with pytest.raises(ValueError):
        chi_boundary_asymptotics(0, 0.5, 2)


@pytest.mark.parametrize("lam, d, want", [(1j, SO13, 0.5), (0.3, SU11, 0.0), (0.5j, SP12, 1.0)])
def test_growth_fit(lam, d, want):
    fit = growth_exponent_fit(SphericalParam(lam, d))
    assert abs(fit.exponent - want) <= 0.05


def test_growth_fit_rejects_bad_fit():
    with pytest.raises(FitError):
        growth_exponent_fit(SphericalParam(1j, SO13), max_residual=1e-12)


@given(st.sampled_from(ALGEBRAS), st.floats(0, 3), st.booleans(),
       st.lists(st.floats(-3, 3), min_size=2, max_size=7))
def test_gram_positive_for_kostant_parameters(alg, x, imag, ts):
    d = root_data(alg)
    lam = 1j * x if imag else min(x, float(d.s0))
    p = SphericalParam(lam, d)
    assume(kostant_positive(p))
    assert min_gram_eigenvalue(p, ts) >= -1e-8
