"""Wavefunctions on the physical interval and trial-vs-oracle comparison.

Samples are taken on ``x/L`` in [0, 1] and scaled so that
``integral_0^1 psi^2 d(x/L) = 1``, i.e. the stored values are
``sqrt(L) * Psi(x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .coords import midpoint_factor, xi_of_x
from .oracle import OracleSpectrum
from .variational import TrialWavefunction


@dataclass(frozen=True)
class SampledWavefunction:
    nu: float
    xs: np.ndarray
    values: np.ndarray
    normalized: bool = True

    def norm(self) -> float:
        return float(simpson(self.values**2, x=self.xs))


def _grid(n_samples: int) -> np.ndarray:
    if n_samples < 3:
        raise ValueError("need at least 3 samples")
    return np.linspace(0.0, 1.0, n_samples)


def trial_values(t: TrialWavefunction, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    xi = xi_of_x(xs)
    out = t.norm_const * xi * np.exp(-t.nu * xi) * t.f(xi)
    if t.parity == "odd":
        # signed 1 - 2x/L makes the state antisymmetric about the midpoint
        out = out * midpoint_factor(xs)
    return out


def sample_trial(t: TrialWavefunction, n_samples: int = 401) -> SampledWavefunction:
    xs = _grid(n_samples)
    return SampledWavefunction(t.nu, xs, trial_values(t, xs))


def sample_oracle(spectrum: OracleSpectrum, level: int, xs) -> SampledWavefunction:
    """Cubic-spline resampling of an oracle eigenvector onto ``x/L`` points."""
    xs = np.asarray(xs, dtype=float)
    t = np.concatenate(([0.0], spectrum.x / spectrum.nu, [1.0]))
    v = np.concatenate(([0.0], spectrum.eigenvectors[level] * math.sqrt(spectrum.nu), [0.0]))
    out = CubicSpline(t, v)(xs)
    out[(xs <= 0.0) | (xs >= 1.0)] = 0.0  # Dirichlet walls exactly
    return SampledWavefunction(spectrum.nu, xs, out)


def resample(w: SampledWavefunction, xs) -> SampledWavefunction:
    xs = np.asarray(xs, dtype=float)
    return SampledWavefunction(w.nu, xs, CubicSpline(w.xs, w.values)(xs), w.normalized)


@dataclass(frozen=True)
class Comparison:
    l2_diff: float
    max_diff: float
    overlap: float


def compare(a: SampledWavefunction, b: SampledWavefunction) -> Comparison:
    """Distance and overlap after flipping ``b`` to the sign that maximizes overlap."""
    if not math.isclose(a.nu, b.nu, rel_tol=1e-12):
        raise ValueError(f"different separations: {a.nu} vs {b.nu}")
    if a.xs.shape != b.xs.shape or not np.array_equal(a.xs, b.xs):
        raise ValueError("sample grids differ; resample one of them first")
    dot = float(simpson(a.values * b.values, x=a.xs))
    sign = -1.0 if dot < 0 else 1.0
    diff = a.values - sign * b.values
    return Comparison(
        l2_diff=float(math.sqrt(simpson(diff**2, x=a.xs))),
        max_diff=float(np.max(np.abs(diff))),
        overlap=abs(dot),
    )
