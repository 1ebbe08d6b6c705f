import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

import published_forms as pub
from h2ion1d import oracle
from h2ion1d import variational as var
from h2ion1d.errors import MinimizationError
from h2ion1d.verify import normalization_integral
from h2ion1d.wavefunction import trial_values

mpmath.mp.dps = 50


def direct_energy(t: var.TrialWavefunction) -> float:
    """Energy functional by plain quadrature in x/L, independent of the moment machinery."""
    nu = t.nu
    psi = lambda s: float(trial_values(t, s))
    h = 1e-6

    def dpsi(s):
        return (psi(min(s + h, 1.0)) - psi(max(s - h, 0.0))) / (min(s + h, 1.0) - max(s - h, 0.0))

    opts = dict(limit=200, epsabs=0, epsrel=1e-12)
    norm = quad(lambda s: psi(s) ** 2, 0, 1, **opts)[0]
    kin = quad(lambda s: dpsi(s) ** 2, 0, 1, **opts)[0] / (2 * nu**2)
    pot = quad(lambda s: psi(s) ** 2 * (1 / s + 1 / (1 - s)) if 0 < s < 1 else 0.0, 0, 1, **opts)[0] / nu
    return 1 / nu + (kin - pot) / norm


def mp_epsilon1(nu):
    nu = mpmath.mpf(nu)
    x = mpmath.sqrt(nu / 2)
    F = mpmath.sqrt(mpmath.pi) / 2 * mpmath.exp(-x * x) * mpmath.erfi(x)
    A = mpmath.sqrt(nu) * (15 + 7*nu + 147*nu**2 + 175*nu**3) \
        - mpmath.sqrt(2) * F * (15 + 12*nu + 150*nu**2 + 100*nu**3 + 175*nu**4)
    B = -10 * nu**1.5 * (21 + 29*nu + 17*nu**2 + 5*nu**3) \
        + 2 * mpmath.sqrt(2) * nu * F * (105 + 180*nu + 138*nu**2 + 60*nu**3 + 25*nu**4)
    return float(A / B)


@pytest.mark.parametrize("nu", [2.0, 2.6, 5.0, 9.6, 15.0])
def test_even_forms_match_published(nu):
    f = var.quadratic_forms("even", nu)
    assert np.allclose(f.q, pub.k(nu), rtol=1e-8, atol=0)
    assert np.allclose(f.p, pub.g(nu), rtol=1e-8, atol=0)


@pytest.mark.parametrize("nu", [3.0, 6.0, 9.6, 15.0])
def test_odd_forms_match_published(nu):
    f = var.quadratic_forms("odd", nu)
    assert np.allclose(f.q, pub.kappa(nu), rtol=1e-7, atol=0)
    assert np.allclose(f.p, pub.gamma(nu), rtol=1e-7, atol=0)


@pytest.mark.parametrize("nu", [1e-3, 0.05, 0.5, 0.999, 1.0, 2.6, 10.0, 40.0])
def test_epsilon1_against_high_precision(nu):
    assert var.epsilon1(nu).value == pytest.approx(mp_epsilon1(nu), rel=1e-12)


def test_epsilon1_is_order1_quotient():
    for nu in (0.3, 2.6, 10.0):
        forms = var.rayleigh_forms("even", nu, 1)
        assert forms.eps_free
        assert var.epsilon1(nu).value == pytest.approx(float(forms.quotient(0.0)), rel=1e-10)


@pytest.mark.parametrize("parity,nu", [("even", 0.5), ("even", 2.6), ("even", 10.0),
                                       ("odd", 2.0), ("odd", 9.6), ("odd", 20.0)])
def test_closed_form_matches_numerical_minimum(parity, nu):
    eps_num, e_num = var.optimize_order_n(parity, nu, 2)
    forms = var.quadratic_forms(parity, nu)
    assert var.epsilon2(parity, nu) == pytest.approx(e_num, abs=1e-12)
    # argmin from a value search is only good to ~sqrt(machine eps)
    assert var.epsilon_star(forms) == pytest.approx(eps_num, rel=1e-6, abs=1e-6)


@given(parity=st.sampled_from(["even", "odd"]), nu=st.floats(0.2, 40.0))
@settings(max_examples=40, deadline=None)
def test_stationary_point_is_a_minimum(parity, nu):
    forms = var.quadratic_forms(parity, nu)
    lo, hi = var.epsilon_roots(forms)
    s = forms.stationarity()
    scale = max(abs(c) for c in s.coef)
    assert abs(s(lo)) <= 1e-9 * scale * (1 + lo * lo)
    e = var.closed_form_energy(forms)
    assert e == pytest.approx(float(forms.quotient(lo)), abs=1e-12 * max(1.0, abs(e)))
    d = 1e-4 * max(1.0, abs(lo))
    assert forms.quotient(lo - d) >= e - 1e-12 and forms.quotient(lo + d) >= e - 1e-12


@pytest.mark.parametrize("parity,nu,order", [("even", 2.6, 1), ("even", 2.6, 2), ("even", 10.0, 2),
                                             ("odd", 9.6, 2), ("even", 5.0, 3), ("odd", 6.0, 4)])
def test_energy_matches_direct_quadrature(parity, nu, order):
    t = var.trial_wavefunction(parity, nu, order)
    assert var.rayleigh_energy(t) == pytest.approx(direct_energy(t), abs=1e-7)


@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("nu", [0.5, 2.6, 10.0])
def test_normalization(parity, nu):
    t = var.trial_wavefunction(parity, nu)
    assert normalization_integral(t) == pytest.approx(0.5, abs=1e-10)
    assert var.rayleigh_energy(t) == pytest.approx(var.epsilon2(parity, nu), abs=1e-12)


@pytest.mark.parametrize("nu", [0.5, 1.0, 2.0, 2.6, 5.0, 10.0, 20.0])
def test_upper_bound_and_parity_order(nu):
    spectrum = oracle.solve_spectrum(nu)
    assert spectrum.energy(1) > spectrum.energy(0)
    for order in (1, 2, 3, 4):
        even = var.optimize_order_n("even", nu, order)[1]
        assert even >= spectrum.energy(0) - spectrum.richardson_error[0]
        if order > 1:
            odd = var.optimize_order_n("odd", nu, order)[1]
            assert odd >= spectrum.energy(1) - spectrum.richardson_error[1]
    # the trial families are not nested, so only the order-2 pair is ordered;
    # at large nu the exact levels are nearly degenerate
    assert var.epsilon2("odd", nu) > var.epsilon2("even", nu)


def test_closed_order2_beats_order1():
    for nu in (0.5, 2.6, 10.0, 20.0):
        assert var.epsilon2("even", nu) <= var.epsilon1(nu).value


def test_equilibria():
    nu1, e1 = var.equilibrium_epsilon1()
    nu2, e2 = var.equilibrium_epsilon2("even")
    assert e2 < e1 < -0.83
    assert abs(nu1 - nu2) < 1e-2
    nu3, e3 = var.equilibrium_epsilon2("odd")
    assert 9 < nu3 < 10 and e3 > e2


def test_golden_section_absolute_tolerance():
    # a kink minimum is located to the bracket width, unlike a flat quadratic one
    x, fx = var.golden_section(lambda x: abs(x - 1.3) + 7.0, 0.0, 5.0, 1e-10)
    assert x == pytest.approx(1.3, abs=1e-10) and fx == pytest.approx(7.0, abs=1e-10)


def test_scan_minimize_edge_raises():
    with pytest.raises(MinimizationError):
        var.scan_minimize(lambda x: x, 0.0, 1.0)


def test_monotone_quotient_raises():
    forms = var.QuadraticForms("even", 1.0, np.polynomial.Polynomial([1.0]),
                               np.polynomial.Polynomial([0.0, 1.0]), 0.0)
    with pytest.raises(MinimizationError):
        var.epsilon_star(forms)


def test_eps_free_forms_return_quotient():
    forms = var.rayleigh_forms("even", 2.6, 1)
    assert var.epsilon_star(forms) == pytest.approx(float(forms.quotient(0.0)))


def test_self_consistency_is_diagnostic():
    eps, e = var.optimize_order_n("even", 2.6, 3)
    # close to, but not exactly, self-consistent
    assert abs(var.self_consistency_residual("even", 2.6, 3, eps)) < 0.5


def test_box_order1_exact():
    assert var.box_energy(1) == Fraction(153, 31)


def test_box_orders_converge_from_above():
    exact = math.pi**2 / 2
    es = [float(var.box_energy(k)) for k in (1, 2, 3, 4)]
    assert all(e >= exact - 1e-12 for e in es)
    assert es[0] > es[1] > es[2] >= es[3] - 1e-12
    assert es[3] == pytest.approx(exact, rel=1e-12)


def test_input_validation():
    with pytest.raises(ValueError):
        var.epsilon1(0.0)
    with pytest.raises(ValueError):
        var.optimize_order_n("even", 1.0, 0)
    with pytest.raises(ValueError):
        var.rayleigh_forms("even", -1.0, 2)
    with pytest.raises(ValueError):
        var.box_energy(0)


@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("nu", [20.0, 40.0, 80.0])
def test_epsilon2_large_nu_tail(parity, nu):
    assert (var.epsilon2(parity, nu) + 0.5) * nu**2 == pytest.approx(-1.5, rel=0.05)


@pytest.mark.parametrize("nu", [20.0, 40.0, 80.0])
def test_epsilon1_large_nu_tail(nu):
    assert (var.epsilon1(nu).value + 0.5) * nu**2 == pytest.approx(4.5, rel=0.05)


def test_epsilon1_tail_approaches_nine_halves():
    # the approach is slow, roughly 9/2 + 35/nu
    tail = [(var.epsilon1(nu).value + 0.5) * nu**2 for nu in (160.0, 320.0, 640.0)]
    assert tail[0] > tail[1] > tail[2] > 4.5
    assert tail[2] == pytest.approx(4.5, rel=0.02)


@pytest.mark.parametrize("order", [3, 4])
def test_higher_orders_even_at_2_6(order):
    assert var.optimize_order_n("even", 2.6, order)[1] == pytest.approx(-0.830672, abs=1e-5)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_higher_orders_odd_at_9_6(order):
    assert var.optimize_order_n("odd", 9.6, order)[1] == pytest.approx(-0.514557, abs=1e-5)
