"""Moments  M(n, w, nu) = integral_0^{1/4} xi^n exp(-2 nu xi) (1 - 4 xi)^(+-1/2) d xi.

Every normalization and energy integral of the trial states is a finite
linear combination of these.  Two independent routes are provided:

``moment_closed``
    The inverse-square-root moment with n = 0 is F(sqrt(nu/2))/sqrt(2 nu)
    with F the Dawson integral.  Integration by parts links neighbouring
    orders through a three-term recurrence whose wanted solution is the
    minimal one, so the higher orders are generated by backward (Miller)
    recurrence normalized to that Dawson value.  Below ``TAYLOR_SWITCH``
    the exponential is expanded instead and each term is a Beta integral.

``moment_quad``
    Adaptive Gauss-Legendre quadrature after u = sqrt(1 - 4 xi), which
    removes the endpoint singularity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np

from .errors import DivergentMomentError, QuadratureError
from .special import dawson_ratio

Weight = Literal["inv_sqrt", "sqrt"]
WEIGHTS = ("inv_sqrt", "sqrt")

TAYLOR_SWITCH = 0.5


@dataclass(frozen=True)
class MomentRequest:
    n: int
    weight: Weight
    nu: float

    def __post_init__(self):
        if self.weight not in WEIGHTS:
            raise ValueError(f"weight must be one of {WEIGHTS}, got {self.weight!r}")
        if int(self.n) != self.n or self.n < -1:
            raise ValueError("n must be an integer >= -1")
        if not self.nu >= 0:
            raise ValueError("nu must be non-negative")


def _check_convergent(r: MomentRequest) -> None:
    if r.n < 0:
        raise DivergentMomentError(
            "the xi^-1 moment diverges at xi = 0; multiply by psi^2 = O(xi^2) first"
        )


def beta_moment(n: int, weight: Weight) -> float:
    """Moment at nu = 0 (no exponential): rational, computed exactly."""
    return float(beta_moment_exact(n, weight))


@lru_cache(maxsize=None)
def beta_moment_exact(n: int, weight: Weight) -> Fraction:
    # integral_0^1 (1-u^2)^n du = (2n)!!/(2n+1)!!, and the u^2-weighted one
    # carries an extra 1/(2n+3)
    r = Fraction(1, 2)
    for k in range(1, n + 1):
        r *= Fraction(2 * k, 4 * (2 * k + 1))
    if weight == "sqrt":
        r /= 2 * n + 3
    return r


def _taylor_table(nu: float, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    # expand exp(-2 nu xi); on [0, 1/4] the series ratio is at most nu/2/m
    inv = np.zeros(nmax + 1)
    sq = np.zeros(nmax + 1)
    for n in range(nmax + 1):
        coef = 1.0
        m = 0
        si = ss = 0.0
        while True:
            ti = coef * beta_moment(n + m, "inv_sqrt")
            ts = coef * beta_moment(n + m, "sqrt")
            si += ti
            ss += ts
            if abs(ti) < 1e-18 * abs(si) and abs(ts) < 1e-18 * abs(ss):
                break
            m += 1
            coef *= -2.0 * nu / m
        inv[n] = si
        sq[n] = ss
    return inv, sq


def _miller_table(nu: float, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    # I_n = inverse-sqrt moments obey, for n >= 1,
    #   8 nu I_{n+1} = (2 nu + 2 + 4 n) I_n - n I_{n-1}
    # and decay like 4^-n, the minimal solution: recur downward from N.
    top = nmax + 1
    N = top + 50 + int(2.0 * nu)
    vals = np.zeros(N + 2)
    vals[N] = 1.0
    for n in range(N, 0, -1):
        vals[n - 1] = ((2.0 * nu + 2.0 + 4.0 * n) * vals[n] - 8.0 * nu * vals[n + 1]) / n
        if abs(vals[n - 1]) > 1e200:
            vals[n - 1 :] *= 1e-200
    x = math.sqrt(0.5 * nu)
    i0 = 0.5 * dawson_ratio(x)
    inv_full = vals[: top + 1] * (i0 / vals[0])
    # (1-4xi)^{1/2} = (1-4xi)^{-1/2} - 4 xi (1-4xi)^{-1/2}
    sq = inv_full[:-1] - 4.0 * inv_full[1:]
    return inv_full[:-1].copy(), sq


@lru_cache(maxsize=256)
def _table(nu: float, nmax: int, switch: float) -> tuple[np.ndarray, np.ndarray]:
    if nu == 0.0:
        inv = np.array([beta_moment(n, "inv_sqrt") for n in range(nmax + 1)])
        sq = np.array([beta_moment(n, "sqrt") for n in range(nmax + 1)])
    elif nu < switch:
        inv, sq = _taylor_table(nu, nmax)
    else:
        inv, sq = _miller_table(nu, nmax)
    inv.setflags(write=False)
    sq.setflags(write=False)
    return inv, sq


def moment_table(nu: float, nmax: int, *, switch: float = TAYLOR_SWITCH) -> dict[str, np.ndarray]:
    """Closed-form moments for ``n = 0..nmax``, keyed by weight (read-only arrays)."""
    if not nu >= 0:
        raise ValueError("nu must be non-negative")
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    # round the cache key up so nearby requests share one table
    size = max(16, 1 << (int(nmax)).bit_length())
    inv, sq = _table(float(nu), size, float(switch))
    return {"inv_sqrt": inv[: nmax + 1], "sqrt": sq[: nmax + 1]}


def moment_closed(r: MomentRequest, *, switch: float = TAYLOR_SWITCH) -> float:
    _check_convergent(r)
    return float(moment_table(r.nu, r.n, switch=switch)[r.weight][r.n])


_GL_LO = np.polynomial.legendre.leggauss(10)
_GL_HI = np.polynomial.legendre.leggauss(20)


def _panel(fn, a: float, b: float) -> tuple[float, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    lo = half * np.dot(_GL_LO[1], fn(mid + half * _GL_LO[0]))
    hi = half * np.dot(_GL_HI[1], fn(mid + half * _GL_HI[0]))
    return hi, abs(hi - lo)


def adaptive_gauss_legendre(fn, a: float, b: float, *, atol: float = 1e-13, rtol: float = 1e-13,
                            max_panels: int = 20000) -> tuple[float, float]:
    """Integrate a smooth vectorized ``fn`` on [a, b] by panel bisection.

    A panel is accepted when its 10- and 20-point Gauss-Legendre estimates
    agree to within its share of ``min(atol, rtol * |estimate|)``.
    Returns ``(value, error_estimate)``.
    """
    whole, _ = _panel(fn, a, b)
    tol = min(atol, rtol * abs(whole)) if whole != 0.0 else atol
    total = err_total = 0.0
    stack = [(a, b)]
    panels = 0
    while stack:
        lo, hi = stack.pop()
        val, err = _panel(fn, lo, hi)
        panels += 1
        if err <= tol * (hi - lo) / (b - a) or hi - lo < 1e-14 * (b - a):
            total += val
            err_total += err
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi))
            stack.append((lo, mid))
        if panels > max_panels:
            raise QuadratureError(
                f"adaptive quadrature exceeded {max_panels} panels", estimate=total, error=err_total
            )
    if err_total > max(tol, 1e-300) * 10:
        raise QuadratureError("quadrature tolerance not reached", estimate=total, error=err_total)
    return total, err_total


def moment_quad(r: MomentRequest, *, atol: float = 1e-13, rtol: float = 1e-13) -> float:
    """Quadrature oracle for a single moment (independent of the Dawson route)."""
    _check_convergent(r)
    n, nu = r.n, r.nu
    scale = 0.5 * 0.25 ** n
    s = 2 if r.weight == "sqrt" else 0

    def integrand(u):
        w = 1.0 - u * u
        return scale * w ** n * u ** s * np.exp(-0.5 * nu * w)

    value, _ = adaptive_gauss_legendre(integrand, 0.0, 1.0, atol=atol, rtol=rtol)
    return float(value)
