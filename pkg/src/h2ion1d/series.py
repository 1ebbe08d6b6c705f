"""Power-series solutions f(xi) = sum_i c_i(eps) xi^i of the factor ODE.

Each coefficient is a polynomial in the energy parameter eps with real
coefficients (the separation nu is folded in numerically).  They follow
from matching powers of xi in ``A f'' + B f' + C f = 0`` starting at
``c_0 = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .coords import FactorODE, box_ode, check_parity, factor_ode

EpsilonPoly = Polynomial

ONE = Polynomial([1.0])
ZERO = Polynomial([0.0])


def canonical(p: Polynomial) -> Polynomial:
    """Drop exactly-zero trailing coefficients (the zero polynomial stays ``[0]``)."""
    return p.trim(tol=0)


@dataclass(frozen=True)
class SeriesCoefficients:
    parity: str
    nu: float
    terms: tuple[Polynomial, ...]

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def eps_degree(self) -> int:
        return max(t.degree() for t in self.terms)

    def truncated(self, order: int) -> "SeriesCoefficients":
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} series to order {order}")
        return SeriesCoefficients(self.parity, self.nu, self.terms[: order + 1])

    def at(self, eps: float) -> Polynomial:
        """f as an ordinary polynomial in xi for a fixed eps."""
        return Polynomial([t(eps) for t in self.terms])

    def array(self) -> np.ndarray:
        """Coefficient table ``a[i, k]`` of ``xi**i * eps**k``."""
        out = np.zeros((len(self.terms), self.eps_degree + 1))
        for i, t in enumerate(self.terms):
            out[i, : len(t.coef)] = t.coef
        return out


def series_from_ode(ode: FactorODE, order: int, *, parity: str = "even", nu: float = 0.0) -> SeriesCoefficients:
    """Generate ``c_0 .. c_order`` for an arbitrary factor ODE with ``A(0) = 0``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    A = ode.A.coef
    B = ode.B.coef
    if A[0] != 0.0:
        raise ValueError("xi = 0 must be a singular point (A(0) = 0)")
    a1 = A[1] if len(A) > 1 else 0.0
    c: list[Polynomial] = [ONE]
    for m in range(order):
        # coefficient of xi^m; only A_1 f'' and B_0 f' reach c_{m+1}
        lead = (m + 1) * (a1 * m + B[0])
        rhs = ZERO
        for j, aj in enumerate(A):
            k = m - j + 2
            if j >= 2 and 0 <= k <= m and aj != 0.0:
                rhs = rhs + aj * k * (k - 1) * c[k]
        for j, bj in enumerate(B):
            k = m - j + 1
            if j >= 1 and 0 <= k <= m and bj != 0.0:
                rhs = rhs + bj * k * c[k]
        for j, cj in enumerate(ode.C):
            k = m - j
            if 0 <= k <= m:
                rhs = rhs + cj * c[k]
        c.append(canonical(-rhs / lead))
    return SeriesCoefficients(parity, float(nu), tuple(c))


def series_coefficients(parity: str, nu: float, order: int) -> SeriesCoefficients:
    """Series factor of the even (ground) or odd (first excited) trial state."""
    check_parity(parity)
    if order < 1:
        raise ValueError("order must be at least 1")
    if not nu > 0:
        raise ValueError("nu must be positive")
    return series_from_ode(factor_ode(parity, nu), order, parity=parity, nu=nu)


def box_series(order: int) -> SeriesCoefficients:
    """Series for the free particle in a box; eps is the energy in hbar^2/(m L^2)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    return series_from_ode(box_ode(), order, parity="even", nu=0.0)


def eval_truncated_f(s: SeriesCoefficients, eps: float, xi):
    """Return ``(f, f', f'')`` at ``xi`` for the truncated series at ``eps``."""
    f = s.at(eps)
    d1 = f.deriv(1)
    d2 = f.deriv(2)
    return f(xi), d1(xi), d2(xi)


def residual_coefficients(ode: FactorODE, s: SeriesCoefficients) -> list[Polynomial]:
    """Coefficients (polynomials in eps) of each power of xi in ``A f'' + B f' + C f``.

    For a series generated from ``ode`` the entries below ``xi**order`` vanish
    up to rounding.
    """
    f = list(s.terms)
    n = len(f)
    d1 = [(i + 1) * f[i + 1] for i in range(n - 1)]
    d2 = [(i + 2) * (i + 1) * f[i + 2] for i in range(n - 2)]
    out: dict[int, Polynomial] = {}

    def acc(power: int, p: Polynomial) -> None:
        out[power] = out.get(power, ZERO) + p

    for j, a in enumerate(ode.A.coef):
        for i, c in enumerate(d2):
            acc(i + j, a * c)
    for j, b in enumerate(ode.B.coef):
        for i, c in enumerate(d1):
            acc(i + j, b * c)
    for j, cj in enumerate(ode.C):
        for i, c in enumerate(f):
            acc(i + j, cj * c)
    return [canonical(out.get(k, ZERO)) for k in range(max(out) + 1)]
