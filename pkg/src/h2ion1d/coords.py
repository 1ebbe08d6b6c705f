"""The xi = x(L - x)/L^2 coordinate and the ODE obeyed by the series factor f.

All quantities are dimensionless: lengths in units of a = hbar^2/(m e^2),
energies in units of m e^4/hbar^2, and ``nu = L/a`` is the proton separation.

Writing the wavefunction on the left half-interval as

    even:  psi(xi) = xi exp(-nu xi) f(xi)
    odd:   psi(xi) = xi sqrt(1 - 4 xi) exp(-nu xi) f(xi)

turns the Schrodinger equation into ``A f'' + B f' + C f = 0`` with
polynomial coefficients (``C`` is also linear in the energy parameter).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from numpy.polynomial import Polynomial

Parity = Literal["even", "odd"]
PARITIES = ("even", "odd")


@dataclass(frozen=True)
class GeometryConfig:
    """Proton separation ``nu = L/a``."""

    nu: float

    def __post_init__(self):
        if not (self.nu > 0 and np.isfinite(self.nu)):
            raise ValueError(f"nu must be positive and finite, got {self.nu!r}")

    @property
    def half_width(self) -> float:
        return 0.5 * self.nu


def check_parity(parity: str) -> Parity:
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return parity  # type: ignore[return-value]


def xi_of_x(x_over_L):
    """Map ``x/L`` in [0, 1] to xi in [0, 1/4]; works elementwise on arrays."""
    t = np.asarray(x_over_L, dtype=float)
    if np.any((t < 0) | (t > 1)) or np.any(np.isnan(t)):
        raise ValueError("x/L must lie in [0, 1]")
    xi = t * (1.0 - t)
    return float(xi) if xi.ndim == 0 else xi


def x_of_xi(xi):
    """Inverse of :func:`xi_of_x` on the left half, returning ``x/L`` in [0, 1/2]."""
    p = np.asarray(xi, dtype=float)
    if np.any((p < 0) | (p > 0.25)) or np.any(np.isnan(p)):
        raise ValueError("xi must lie in [0, 1/4]")
    # (1 - s)/2 = 2 xi / (1 + s) avoids cancellation as xi -> 0
    t = 2.0 * p / (1.0 + np.sqrt(1.0 - 4.0 * p))
    return float(t) if t.ndim == 0 else t


def midpoint_factor(x_over_L):
    """Signed ``1 - 2x/L``; its absolute value equals sqrt(1 - 4 xi) without cancellation."""
    t = np.asarray(x_over_L, dtype=float)
    out = 1.0 - 2.0 * t
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FactorODE:
    """Coefficients of ``A(xi) f'' + B(xi) f' + C(xi, eps) f = 0``.

    ``A`` and ``B`` are polynomials in xi.  ``C`` is stored as a tuple of
    polynomials in eps, one per power of xi.  ``eps_label`` is what the free
    parameter means: the dimensionless energy for the molecular ion, or the
    energy in units of hbar^2/(m L^2) for the bare box.
    """

    A: Polynomial
    B: Polynomial
    C: tuple[Polynomial, ...]
    eps_label: str = "epsilon"

    def c_at(self, eps: float) -> Polynomial:
        return Polynomial([c(eps) for c in self.C])


def factor_ode(parity: str, nu: float) -> FactorODE:
    """ODE for the series factor f of the given parity at separation ``nu``."""
    check_parity(parity)
    nu = float(nu)
    # even: prefactor xi e^{-nu xi}; odd adds sqrt(1 - 4 xi), which shifts
    # the f' coefficient by 2 xi and the f coefficient by 2 - 2 nu xi.
    b1, c0, c1 = (5.0, 1.0, -4.0 * nu) if parity == "even" else (7.0, 3.0, -6.0 * nu)
    A = Polynomial([0.0, -0.5, 2.0])
    B = Polynomial([-1.0, b1 + nu, -4.0 * nu])
    C = (
        Polynomial([c0]),
        Polynomial([c1 - 0.5 * nu * nu, -nu * nu]),
        Polynomial([2.0 * nu * nu]),
    )
    return FactorODE(A, B, C)


def box_ode() -> FactorODE:
    """Particle in a box, psi = xi f(xi), with eps the energy in hbar^2/(m L^2)."""
    return FactorODE(
        A=Polynomial([0.0, -0.5, 2.0]),
        B=Polynomial([-1.0, 5.0]),
        C=(Polynomial([1.0]), Polynomial([0.0, -1.0])),
        eps_label="box energy",
    )


def _numeric_derivatives(f: Callable[[float], float], xi: float, h: float):
    fp, f0, fm = f(xi + h), f(xi), f(xi - h)
    return f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)


def ode_residual(parity: str, f, nu: float, eps: float, xi: float, *, h: float = 1e-5) -> float:
    """Left-hand side of the f-equation at ``xi``.

    ``f`` is either a callable returning ``(f, f', f'')`` as a tuple, or a
    plain callable, in which case the derivatives are taken by central
    differences with step ``h``.
    """
    if not 0.0 < xi < 0.25:
        raise ValueError("xi must lie in (0, 1/4)")
    ode = factor_ode(parity, nu)
    out = f(xi)
    if isinstance(out, tuple):
        f0, f1, f2 = out
    else:
        f0, f1, f2 = _numeric_derivatives(f, xi, h)
    return float(ode.A(xi) * f2 + ode.B(xi) * f1 + ode.c_at(eps)(xi) * f0)
