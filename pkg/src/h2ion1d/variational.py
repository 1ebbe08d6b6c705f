"""Variational energies of the truncated series trial states.

For a trial ``psi = N phi(xi) f(xi; eps)`` the normalization and the energy
functional are polynomials in eps assembled from :mod:`h2ion1d.moments`:

    1/N^2    = norm(eps)   = 2 * integral psi^2 / sqrt(1-4xi)          (N = 1)
    eps[psi] = offset + energy(eps) / norm(eps)
    energy   = (1/nu^2) integral sqrt(1-4xi) psi'^2 - (2/nu) integral psi^2 / (xi sqrt(1-4xi))

with ``offset = 1/nu`` (proton repulsion).  At series order 2 both are
quadratics, which gives the closed-form stationary point and energy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial
from scipy.signal import convolve2d

from .coords import check_parity
from .errors import DiscriminantError, MinimizationError
from .moments import beta_moment_exact, moment_table
from .series import SeriesCoefficients, box_series, series_coefficients, series_from_ode
from .coords import factor_ode
from .special import dawson_ratio

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SCAN_POINTS = 64
EPS_TOL = 1e-12
NU_TOL = 1e-6
EQUILIBRIUM_BRACKETS = {"even": (1.0, 5.0), "odd": (5.0, 15.0)}


@dataclass(frozen=True)
class QuadraticForms:
    """Norm and energy polynomials of a trial family (quadratic at order 2)."""

    parity: str
    nu: float
    norm: Polynomial
    energy: Polynomial
    offset: float

    @property
    def q(self) -> tuple[float, float, float]:
        return _three(self.norm)

    @property
    def p(self) -> tuple[float, float, float]:
        return _three(self.energy)

    @property
    def eps_free(self) -> bool:
        return self.norm.degree() == 0 and self.energy.degree() == 0

    def quotient(self, eps):
        return self.offset + self.energy(eps) / self.norm(eps)

    def stationarity(self) -> Polynomial:
        """Numerator of d(quotient)/d(eps): energy' * norm - energy * norm'."""
        return self.energy.deriv() * self.norm - self.energy * self.norm.deriv()


def _three(p: Polynomial) -> tuple[float, float, float]:
    c = p.coef
    if len(c) > 3 and np.any(c[3:] != 0):
        raise ValueError("form is not quadratic in eps")
    c = np.pad(c, (0, max(0, 3 - len(c))))
    return float(c[0]), float(c[1]), float(c[2])


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return convolve2d(a, b)


def _add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1])))
    out[: a.shape[0], : a.shape[1]] += a
    out[: b.shape[0], : b.shape[1]] += b
    return out


def _xi_poly(*coeffs: float) -> np.ndarray:
    return np.array(coeffs, dtype=float).reshape(-1, 1)


def _dxi(a: np.ndarray) -> np.ndarray:
    if a.shape[0] == 1:
        return np.zeros((1, a.shape[1]))
    return a[1:] * np.arange(1, a.shape[0])[:, None]


def _integrate(table: np.ndarray, moments: np.ndarray) -> Polynomial:
    return Polynomial(moments[: table.shape[0]] @ table)


def _integrands(parity: str, nu: float, f: np.ndarray):
    """(norm, potential, kinetic) integrands as xi/eps tables with their weights."""
    f2 = _mul(f, f)
    xi2f2 = _mul(_xi_poly(0, 0, 1), f2)
    xif2 = _mul(_xi_poly(0, 1), f2)
    df = _dxi(f)
    if parity == "even":
        # psi' e^{nu xi} = (1 - nu xi) f + xi f'
        g = _add(_mul(_xi_poly(1, -nu), f), _mul(_xi_poly(0, 1), df))
        return (xi2f2, "inv_sqrt"), (xif2, "inv_sqrt"), (_mul(g, g), "sqrt")
    # psi' e^{nu xi} sqrt(1-4xi) = (1 - 6 xi) f + xi (1 - 4 xi)(f' - nu f)
    h = _add(_mul(_xi_poly(1, -6), f), _mul(_xi_poly(0, 1, -4), _add(df, -nu * f)))
    return (xi2f2, "sqrt"), (xif2, "sqrt"), (_mul(h, h), "inv_sqrt")


def forms_from_series(series: SeriesCoefficients) -> QuadraticForms:
    parity, nu = series.parity, series.nu
    f = series.array()
    (pn, wn), (pv, wv), (pk, wk) = _integrands(parity, nu, f)
    nmax = max(pn.shape[0], pv.shape[0], pk.shape[0])
    m = moment_table(nu, nmax)
    norm = 2.0 * _integrate(pn, m[wn])
    kinetic = _integrate(pk, m[wk])
    potential = _integrate(pv, m[wv])
    energy = kinetic / nu**2 - (2.0 / nu) * potential
    return QuadraticForms(parity, nu, norm.trim(tol=0), energy.trim(tol=0), 1.0 / nu)


def rayleigh_forms(parity: str, nu: float, order: int) -> QuadraticForms:
    """Norm/energy polynomials for the trial truncated at ``xi**order`` (order >= 0)."""
    check_parity(parity)
    if not nu > 0:
        raise ValueError("nu must be positive")
    if order < 0:
        raise ValueError("order must be non-negative")
    series = series_from_ode(factor_ode(parity, nu), order, parity=parity, nu=nu)
    return forms_from_series(series)


def quadratic_forms(parity: str, nu: float) -> QuadraticForms:
    """The order-2 forms (k or kappa for the norm, g or gamma for the energy)."""
    return rayleigh_forms(parity, nu, 2)


# --- order 1, closed form in the Dawson integral -------------------------

@dataclass(frozen=True)
class Epsilon1Breakdown:
    A1: float
    B1: float

    @property
    def value(self) -> float:
        return self.A1 / self.B1


_PA = (15, 7, 147, 175)
_QA = (15, 12, 150, 100, 175)
_PB = (21, 29, 17, 5)
_QB = (105, 180, 138, 60, 25)
EPSILON1_SERIES_SWITCH = 1.0
_SERIES_TERMS = 40


def _poly_times(p, s, n):
    out = [Fraction(0)] * n
    for i, a in enumerate(p):
        for j in range(n - i):
            out[i + j] += a * s[j]
    return out


def _epsilon1_series():
    # F(x)/x with nu = 2x^2 is sum_k (-nu)^k / (2k+1)!!
    g = []
    dfact = 1
    for k in range(_SERIES_TERMS):
        dfact *= 2 * k + 1
        g.append(Fraction((-1) ** k, dfact))
    qa = _poly_times(_QA, g, _SERIES_TERMS)
    qb = _poly_times(_QB, g, _SERIES_TERMS)
    a = [Fraction(_PA[i] if i < len(_PA) else 0) - qa[i] for i in range(_SERIES_TERMS)]
    b = [-10 * Fraction(_PB[i] if i < len(_PB) else 0) + 2 * qb[i] for i in range(_SERIES_TERMS)]
    return [float(c) for c in a], [float(c) for c in b]


_A_SERIES, _B_SERIES = _epsilon1_series()


def epsilon1(nu: float) -> Epsilon1Breakdown:
    """Energy of the order-1 trial ``xi e^{-nu xi} (1 + xi)`` as ``A1/B1``.

    ``A1 = sqrt(nu) [P_A(nu) - Q_A(nu) G]`` and
    ``B1 = nu^{3/2} [-10 P_B(nu) + 2 Q_B(nu) G]`` with ``G = F(x)/x``,
    ``x = sqrt(nu/2)``.  Both brackets cancel to several orders as nu -> 0,
    so below ``EPSILON1_SERIES_SWITCH`` they are evaluated from their exact
    rational power series instead.
    """
    if not nu > 0:
        raise ValueError("nu must be positive")
    if nu < EPSILON1_SERIES_SWITCH:
        a = np.polynomial.polynomial.polyval(nu, _A_SERIES)
        b = np.polynomial.polynomial.polyval(nu, _B_SERIES)
    else:
        G = dawson_ratio(math.sqrt(0.5 * nu))
        a = np.polyval(_PA[::-1], nu) - np.polyval(_QA[::-1], nu) * G
        b = -10.0 * np.polyval(_PB[::-1], nu) + 2.0 * np.polyval(_QB[::-1], nu) * G
    return Epsilon1Breakdown(A1=float(math.sqrt(nu) * a), B1=float(nu**1.5 * b))


# --- order 2, closed form ------------------------------------------------

def _discriminant(forms: QuadraticForms) -> float:
    q0, q1, q2 = forms.q
    p0, p1, p2 = forms.p
    return (p2 * q0 - p0 * q2) ** 2 + (p1 * q0 - p0 * q1) * (p1 * q2 - p2 * q1)


def epsilon_roots(forms: QuadraticForms) -> tuple[float, float]:
    """Both stationary points ``(minimum, maximum)`` of a quadratic-form quotient."""
    q0, q1, q2 = forms.q
    p0, p1, p2 = forms.p
    a = p2 * q1 - p1 * q2
    half_b = p2 * q0 - p0 * q2
    D = _discriminant(forms)
    if D < 0:
        raise DiscriminantError(f"negative discriminant {D:.3e} at nu={forms.nu}")
    r = math.sqrt(D)
    # the root where the stationarity polynomial rises (+sqrt) is the minimum
    if half_b > 0:
        lo = -(half_b + r)
        e_min = forms_c(forms) / lo
        e_max = lo / a if a != 0 else math.inf
    else:
        hi = -half_b + r
        e_min = hi / a if a != 0 else math.inf
        e_max = forms_c(forms) / hi if hi != 0 else math.inf
    return e_min, e_max


def forms_c(forms: QuadraticForms) -> float:
    q0, q1, _ = forms.q
    p0, p1, _ = forms.p
    return p1 * q0 - p0 * q1


def epsilon_star(forms: QuadraticForms) -> float:
    """Minimizing value of the variational parameter (the lower-sign root).

    Forms that do not depend on eps at all (series order <= 1) have no
    stationary point; the quotient value itself is returned, i.e. the
    self-consistent choice eps = eps[psi].
    """
    q0, q1, q2 = forms.q
    p0, p1, p2 = forms.p
    scale = max(abs(q0), abs(q1), abs(q2)) * max(abs(p0), abs(p1), abs(p2))
    a = p2 * q1 - p1 * q2
    half_b = p2 * q0 - p0 * q2
    c = p1 * q0 - p0 * q1
    tiny = 1e-14 * scale
    if abs(a) <= tiny and abs(half_b) <= tiny:
        if abs(c) <= tiny:
            return float(forms.quotient(0.0))
        raise MinimizationError("quotient is monotone in eps; no stationary point")
    if abs(a) <= tiny and half_b < 0:
        raise MinimizationError("the only stationary point is a maximum")
    return epsilon_roots(forms)[0]


def closed_form_energy(forms: QuadraticForms) -> float:
    """Minimum of the quadratic-form quotient written without eps*."""
    q0, q1, q2 = forms.q
    p0, p1, p2 = forms.p
    den = q1 * q1 - 4.0 * q0 * q2
    if den == 0.0:
        return float(forms.quotient(epsilon_star(forms)))
    D = _discriminant(forms)
    if D < 0:
        raise DiscriminantError(f"negative discriminant {D:.3e} at nu={forms.nu}")
    return (p1 * q1 - 2.0 * p0 * q2 - 2.0 * p2 * q0 + 2.0 * math.sqrt(D)) / den + forms.offset


def epsilon2(parity: str, nu: float) -> float:
    """Closed-form energy of the order-2 trial (ground for even, first excited for odd)."""
    return closed_form_energy(quadratic_forms(parity, nu))


# --- general order -------------------------------------------------------

def golden_section(fn, a: float, b: float, tol: float, max_iter: int = 500) -> tuple[float, float]:
    """Minimize a unimodal ``fn`` on ``[a, b]`` to an absolute bracket width ``tol``."""
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = fn(x2)
    else:
        raise MinimizationError("golden section did not converge", bracket=(a, b), last=0.5 * (a + b))
    x = 0.5 * (a + b)
    return x, fn(x)


def scan_minimize(fn, lo: float, hi: float, *, points: int = SCAN_POINTS, tol: float = EPS_TOL):
    """Coarse grid scan followed by golden-section refinement of the best cell."""
    xs = np.linspace(lo, hi, points)
    vals = np.array([fn(x) for x in xs])
    if not np.all(np.isfinite(vals)):
        raise MinimizationError("non-finite values in scan", bracket=(lo, hi))
    i = int(np.argmin(vals))
    if i == 0 or i == points - 1:
        raise MinimizationError(
            f"minimum on the edge of the scan range at {xs[i]:.6g}", bracket=(lo, hi), last=xs[i]
        )
    return golden_section(fn, xs[i - 1], xs[i + 1], tol)


def eps_search_range(nu: float) -> tuple[float, float]:
    return -1.0, max(1.0, 25.0 / nu**2)


def optimize_forms(forms: QuadraticForms, lo: float, hi: float) -> tuple[float, float]:
    if forms.eps_free:
        e = float(forms.quotient(0.0))
        return e, e
    return scan_minimize(lambda e: float(forms.quotient(e)), lo, hi)


def optimize_order_n(parity: str, nu: float, order: int) -> tuple[float, float]:
    """Minimize the order-``order`` Rayleigh quotient over eps; returns ``(eps*, energy)``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    forms = rayleigh_forms(parity, nu, order)
    return optimize_forms(forms, *eps_search_range(nu))


def self_consistency_residual(parity: str, nu: float, order: int, eps: float) -> float:
    """``eps[psi(eps)] - eps``; zero for an exact eigenstate."""
    return float(rayleigh_forms(parity, nu, order).quotient(eps)) - eps


def equilibrium(curve, lo: float, hi: float, tol: float = NU_TOL) -> tuple[float, float]:
    """Separation minimizing ``curve(nu)`` on ``[lo, hi]`` and the energy there."""
    return golden_section(curve, lo, hi, tol)


def equilibrium_epsilon1() -> tuple[float, float]:
    return equilibrium(lambda nu: epsilon1(nu).value, *EQUILIBRIUM_BRACKETS["even"])


def equilibrium_epsilon2(parity: str) -> tuple[float, float]:
    check_parity(parity)
    return equilibrium(lambda nu: epsilon2(parity, nu), *EQUILIBRIUM_BRACKETS[parity])


# --- trial states --------------------------------------------------------

@dataclass(frozen=True)
class TrialWavefunction:
    parity: str
    nu: float
    series: SeriesCoefficients
    eps_star: float
    norm_const: float

    def f(self, xi):
        return self.series.at(self.eps_star)(xi)

    def psi(self, xi):
        """psi(xi) on the left half-interval (the odd factor sqrt(1-4xi) is unsigned)."""
        xi = np.asarray(xi, dtype=float)
        out = self.norm_const * xi * np.exp(-self.nu * xi) * self.f(xi)
        if self.parity == "odd":
            out = out * np.sqrt(np.clip(1.0 - 4.0 * xi, 0.0, None))
        return out


def trial_wavefunction(parity: str, nu: float, order: int = 2, eps: float | None = None) -> TrialWavefunction:
    """Normalized trial state; ``eps`` defaults to the variational optimum."""
    check_parity(parity)
    series = series_from_ode(factor_ode(parity, nu), order, parity=parity, nu=nu)
    forms = forms_from_series(series)
    if eps is None:
        if order == 2:
            eps = epsilon_star(forms)
        elif forms.eps_free:
            eps = float(forms.quotient(0.0))
        else:
            eps = optimize_forms(forms, *eps_search_range(nu))[0]
    norm = float(forms.norm(eps))
    return TrialWavefunction(parity, float(nu), series, float(eps), norm ** -0.5)


def rayleigh_energy(t: TrialWavefunction) -> float:
    """Energy functional of a normalized trial state."""
    forms = forms_from_series(t.series)
    return float(forms.offset + t.norm_const**2 * forms.energy(t.eps_star))


# --- particle in a box ---------------------------------------------------

def _box_tables(series: SeriesCoefficients):
    f = series.array()
    psi = _mul(_xi_poly(0, 1), f)
    dpsi = _dxi(psi)
    return _mul(psi, psi), _mul(dpsi, dpsi)


def box_forms(order: int) -> QuadraticForms:
    """E = kinetic/norm for psi = xi f(xi) on the bare box; units hbar^2/(m L^2)."""
    series = box_series(order)
    p2, k2 = _box_tables(series)
    m = moment_table(0.0, max(p2.shape[0], k2.shape[0]))
    norm = 2.0 * _integrate(p2, m["inv_sqrt"])
    kinetic = _integrate(k2, m["sqrt"])
    return QuadraticForms("even", 0.0, norm.trim(tol=0), kinetic.trim(tol=0), 0.0)


def _box_exact(series: SeriesCoefficients) -> Fraction:
    f = [Fraction(float(t(0.0))) for t in series.terms]
    psi = [Fraction(0)] + f
    dpsi = [i * c for i, c in enumerate(psi)][1:]

    def square_integral(c, weight):
        return sum(
            a * b * beta_moment_exact(i + j, weight)
            for i, a in enumerate(c)
            for j, b in enumerate(c)
        )

    return square_integral(dpsi, "sqrt") / (2 * square_integral(psi, "inv_sqrt"))


def box_energy(order: int) -> float | Fraction:
    """Variational ground energy of the box for the xi-series trial of ``order``.

    Order 1 (``psi ~ xi + xi^2``) has no free parameter and is returned as an
    exact ``Fraction``; higher orders are minimized over the energy parameter.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    series = box_series(order)
    if series.eps_degree == 0:
        return _box_exact(series)
    return optimize_forms(box_forms(order), 0.0, 50.0)[1]
