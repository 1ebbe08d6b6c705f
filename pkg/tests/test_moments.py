import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from h2ion1d.errors import DivergentMomentError, QuadratureError
from h2ion1d.moments import (
    TAYLOR_SWITCH, MomentRequest, adaptive_gauss_legendre, beta_moment, beta_moment_exact,
    moment_closed, moment_quad, moment_table,
)

mpmath.mp.dps = 30


def mp_moment(n, weight, nu):
    # u = sqrt(1 - 4 xi) removes the endpoint singularity
    s = -1 if weight == "inv_sqrt" else 1

    def f(u):
        xi = (1 - u * u) / 4
        return xi**n * mpmath.exp(-2 * nu * xi) * u ** (s + 1) / 2

    return float(mpmath.quad(f, [0, 1]))


@pytest.mark.parametrize("nu", [0.01, 0.3, 0.5, 1.0, 2.6, 10.0, 60.0])
@pytest.mark.parametrize("weight", ["inv_sqrt", "sqrt"])
@pytest.mark.parametrize("n", [0, 1, 5, 12])
def test_closed_form_vs_mpmath(n, weight, nu):
    assert moment_closed(MomentRequest(n, weight, nu)) == pytest.approx(mp_moment(n, weight, nu), rel=1e-12)


@given(n=st.integers(0, 14), weight=st.sampled_from(["inv_sqrt", "sqrt"]), nu=st.floats(0.01, 100.0))
@settings(max_examples=80, deadline=None)
def test_closed_form_vs_quadrature(n, weight, nu):
    r = MomentRequest(n, weight, nu)
    assert moment_closed(r) == pytest.approx(moment_quad(r), rel=1e-10)


@pytest.mark.parametrize("n", range(8))
def test_beta_moments_exact(n):
    # 4^{-n-1} B(n+1, 1/2) and 4^{-n-1} B(n+1, 3/2)
    inv = mpmath.beta(n + 1, 0.5) / 4 ** (n + 1)
    sq = mpmath.beta(n + 1, 1.5) / 4 ** (n + 1)
    assert float(beta_moment_exact(n, "inv_sqrt")) == pytest.approx(float(inv), rel=1e-15)
    assert float(beta_moment_exact(n, "sqrt")) == pytest.approx(float(sq), rel=1e-15)
    assert beta_moment(n, "sqrt") == float(beta_moment_exact(n, "sqrt"))
    assert isinstance(beta_moment_exact(n, "sqrt"), Fraction)


def test_nu_zero_is_exact_beta():
    t = moment_table(0.0, 5)
    assert t["inv_sqrt"][0] == 0.5 and t["sqrt"][0] == pytest.approx(1 / 6, rel=1e-15)


@pytest.mark.parametrize("nu", [TAYLOR_SWITCH * 0.9, TAYLOR_SWITCH, TAYLOR_SWITCH * 1.1, 1.5])
def test_branches_agree_near_switch(nu):
    taylor = moment_table(nu, 20, switch=math.inf)
    miller = moment_table(nu, 20, switch=0.0)
    for w in ("inv_sqrt", "sqrt"):
        assert np.allclose(taylor[w], miller[w], rtol=1e-12, atol=0)


@given(st.floats(0.0, 50.0))
@settings(deadline=None)
def test_positive_and_decreasing(nu):
    t = moment_table(nu, 15)
    for w in ("inv_sqrt", "sqrt"):
        assert np.all(t[w] > 0)
        assert np.all(np.diff(t[w]) < 0)
    # sqrt weight is pointwise smaller
    assert np.all(t["sqrt"] < t["inv_sqrt"])


def test_table_read_only():
    t = moment_table(2.6, 4)
    with pytest.raises(ValueError):
        t["sqrt"][0] = 1.0


def test_divergent_moment():
    for w in ("inv_sqrt", "sqrt"):
        with pytest.raises(DivergentMomentError):
            moment_closed(MomentRequest(-1, w, 1.0))
        with pytest.raises(DivergentMomentError):
            moment_quad(MomentRequest(-1, w, 1.0))


@pytest.mark.parametrize("kw", [dict(n=0, weight="flat", nu=1.0), dict(n=-2, weight="sqrt", nu=1.0),
                                dict(n=1.5, weight="sqrt", nu=1.0), dict(n=0, weight="sqrt", nu=-1.0)])
def test_request_validation(kw):
    with pytest.raises(ValueError):
        MomentRequest(**kw)


def test_adaptive_quadrature_known_integrals():
    v, err = adaptive_gauss_legendre(np.exp, 0.0, 1.0)
    assert v == pytest.approx(math.e - 1, rel=1e-14) and err < 1e-12
    v, _ = adaptive_gauss_legendre(lambda x: np.sqrt(x), 0.0, 1.0)
    assert v == pytest.approx(2 / 3, rel=1e-12)


def test_adaptive_quadrature_reports_failure():
    with pytest.raises(QuadratureError) as info:
        adaptive_gauss_legendre(lambda x: np.sin(1 / (x + 1e-9)), 0.0, 1.0, max_panels=8)
    assert info.value.estimate is not None
