"""One-dimensional hydrogen molecular ion: xi-transform series, closed-form and
variational energies, and a finite-difference reference solver."""
from .coords import GeometryConfig, factor_ode, box_ode, xi_of_x, x_of_xi
from .errors import (
    DiscriminantError, DivergentMomentError, MinimizationError, NumericalError,
    QuadratureError, SolverError,
)
from .moments import MomentRequest, moment_closed, moment_quad, moment_table
from .oracle import OracleSpectrum, oracle_energy, shooting_energy, solve_spectrum
from .series import SeriesCoefficients, box_series, series_coefficients
from .special import dawson
from .variational import (
    QuadraticForms, TrialWavefunction, box_energy, epsilon1, epsilon2,
    equilibrium_epsilon1, equilibrium_epsilon2, optimize_order_n, quadratic_forms,
    trial_wavefunction,
)
from .wavefunction import compare, sample_oracle, sample_trial

__all__ = [
    "GeometryConfig", "factor_ode", "box_ode", "xi_of_x", "x_of_xi",
    "DiscriminantError", "DivergentMomentError", "MinimizationError", "NumericalError",
    "QuadratureError", "SolverError",
    "MomentRequest", "moment_closed", "moment_quad", "moment_table",
    "OracleSpectrum", "oracle_energy", "shooting_energy", "solve_spectrum",
    "SeriesCoefficients", "box_series", "series_coefficients",
    "dawson",
    "QuadraticForms", "TrialWavefunction", "box_energy", "epsilon1", "epsilon2",
    "equilibrium_epsilon1", "equilibrium_epsilon2", "optimize_order_n", "quadratic_forms",
    "trial_wavefunction",
    "compare", "sample_oracle", "sample_trial",
]
