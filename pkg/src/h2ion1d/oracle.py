"""Numerical reference spectrum of the dimensionless Hamiltonian

    H = -1/2 d^2/dx^2 - 1/x - 1/(nu - x) + 1/nu,   0 < x < nu,  psi(0) = psi(nu) = 0

(x in units of a).  The main solver uses second-order finite differences on
a uniform grid, Sturm-sequence bisection plus inverse iteration for the
lowest levels, and Richardson extrapolation over grids N and 2N.  A
fixed-step RK4 shooting solver on the half interval is a second, independent
route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal
from scipy.optimize import brentq

from .coords import check_parity
from .errors import SolverError

DEFAULT_GRID = 4000
MIN_GRID = 200


@dataclass(frozen=True)
class OracleSpectrum:
    nu: float
    grid_points: int
    x: np.ndarray              # interior nodes, x = h*i for i = 1..N-1
    levels: tuple[float, ...]  # eigenvalues on the N grid
    eigenvectors: np.ndarray   # shape (num_levels, N-1), sum(psi^2) h = 1
    richardson: tuple[float, ...]
    richardson_error: tuple[float, ...]

    @property
    def h(self) -> float:
        return self.nu / self.grid_points

    def energy(self, level: int) -> float:
        return self.richardson[level]


def _tridiagonal(nu: float, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    h = nu / n
    x = h * np.arange(1, n)
    diag = 1.0 / h**2 - 1.0 / x - 1.0 / (nu - x) + 1.0 / nu
    off = np.full(n - 2, -0.5 / h**2)
    return x, diag, off


def fd_levels(nu: float, grid_points: int, num_levels: int, vectors: bool = False):
    """Lowest eigenvalues (and optionally eigenvectors) on a single grid."""
    x, d, e = _tridiagonal(nu, grid_points)
    try:
        return x, eigh_tridiagonal(
            d, e, eigvals_only=not vectors, select="i",
            select_range=(0, num_levels - 1), lapack_driver="stebz",
        )
    except LinAlgError as exc:
        raise SolverError(f"tridiagonal eigensolver failed at nu={nu}: {exc}") from exc


def solve_spectrum(nu: float, grid_points: int = DEFAULT_GRID, num_levels: int = 2,
                   tol: float | None = None) -> OracleSpectrum:
    """Finite-difference spectrum on N = ``grid_points`` intervals, extrapolated with 2N.

    ``tol`` (optional) is the largest acceptable Richardson error estimate;
    exceeding it raises :class:`SolverError` rather than returning a
    degraded answer.
    """
    if not nu > 0:
        raise ValueError("nu must be positive")
    if grid_points < MIN_GRID:
        raise ValueError(f"grid_points must be at least {MIN_GRID}")
    if num_levels < 1:
        raise ValueError("num_levels must be at least 1")
    x, (w, v) = fd_levels(nu, grid_points, num_levels, vectors=True)
    _, w2 = fd_levels(nu, 2 * grid_points, num_levels)
    h = nu / grid_points
    vecs = v.T / math.sqrt(h)
    for row in vecs:
        # left lobe positive
        k = int(np.argmax(np.abs(row) > 1e-8 * np.abs(row).max()))
        if row[k] < 0:
            row *= -1.0
    rich = (4.0 * w2 - w) / 3.0
    err = np.abs(w2 - w) / 3.0
    if tol is not None and np.any(err > tol):
        raise SolverError(
            f"grid N={grid_points} gives Richardson error {err.max():.2e} > {tol:.2e} at nu={nu}"
        )
    return OracleSpectrum(
        nu=float(nu), grid_points=grid_points, x=x, levels=tuple(map(float, w)),
        eigenvectors=vecs, richardson=tuple(map(float, rich)),
        richardson_error=tuple(map(float, err)),
    )


def oracle_energy(nu: float, level: int, grid_points: int = DEFAULT_GRID) -> float:
    return solve_spectrum(nu, grid_points, level + 1).energy(level)


def sign_changes(values: np.ndarray, rel: float = 1e-8) -> int:
    """Number of sign changes, ignoring samples below ``rel`` of the peak."""
    v = np.asarray(values)
    v = v[np.abs(v) > rel * np.abs(v).max()]
    return int(np.count_nonzero(np.diff(np.sign(v))))


# --- shooting ------------------------------------------------------------

def _rk4_midpoint(nu: float, E: float, steps: int) -> tuple[float, float]:
    """Integrate from x = h to nu/2, starting on the regular Frobenius branch."""
    half = 0.5 * nu
    h = half / (steps + 1)
    x = h
    # psi = x - x^2 + (1 - E) x^3 / 3 + O(x^4)
    a3 = (1.0 - E) / 3.0
    y = x - x * x + a3 * x**3
    dy = 1.0 - 2.0 * x + 3.0 * a3 * x * x
    c = 1.0 / nu - E

    def acc(xx, yy):
        return 2.0 * (c - 1.0 / xx - 1.0 / (nu - xx)) * yy

    for _ in range(steps):
        k1y, k1v = dy, acc(x, y)
        k2y, k2v = dy + 0.5 * h * k1v, acc(x + 0.5 * h, y + 0.5 * h * k1y)
        k3y, k3v = dy + 0.5 * h * k2v, acc(x + 0.5 * h, y + 0.5 * h * k2y)
        k4y, k4v = dy + h * k3v, acc(x + h, y + h * k3y)
        y += h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6.0
        dy += h * (k1v + 2 * k2v + 2 * k3v + k4v) / 6.0
        x += h
    return y, dy


def shooting_energy(nu: float, parity: str, steps: int = 4000, bracket: tuple[float, float] | None = None) -> float:
    """Lowest level of the given parity by midpoint matching.

    Even states need psi'(nu/2) = 0, odd states psi(nu/2) = 0.  Without an
    explicit ``bracket`` a coarse finite-difference estimate (N = 400) is
    used only to place one.
    """
    check_parity(parity)
    idx = 1 if parity == "odd" else 0

    def mismatch(E):
        y, dy = _rk4_midpoint(nu, E, steps)
        return dy if idx == 0 else y

    if bracket is None:
        _, w = fd_levels(nu, 400, 2)
        guess = float(w[idx])
        width = 0.02 + 0.02 * abs(guess)
        bracket = (guess - width, guess + width)
    lo, hi = bracket
    try:
        return brentq(mismatch, lo, hi, xtol=1e-13, rtol=1e-13)
    except ValueError as exc:
        raise SolverError(f"shooting bracket [{lo}, {hi}] does not enclose a root at nu={nu}") from exc
