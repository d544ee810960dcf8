"""Asymptotic-preserving splitting solver for the 1+1/2 dimensional
relativistic Vlasov-Maxwell system, with linear dispersion tools."""

from .diagnostics import TimeSeries, energies, gauss_residual, limit_errors, mode_amplitudes
from .dispersion import (
    WEIBEL_PARAMS,
    DispersionParams,
    continuous_D,
    find_root,
    growth_rate_scan,
    plasma_Z,
    semidiscrete_matrix,
)
from .errors import (
    AbortedRunError,
    ApvmError,
    ConfigParseError,
    ConfigurationError,
    ConsistencyError,
    DomainError,
    IllConditionedError,
    NoRootError,
)
from .maxwell import MaxwellMethod, stability_function
from .runner import RunConfig, run, run_convergence_in_c, run_order_study
from .state import FieldState, PhaseGrid, SimState, init_landau, init_weibel
from .vlasov import step, step_first_order, step_limit_vlasov_ampere, step_strang

__version__ = "0.1.0"

__all__ = [
    "AbortedRunError", "ApvmError", "ConfigParseError", "ConfigurationError",
    "ConsistencyError", "DispersionParams", "DomainError", "FieldState",
    "IllConditionedError", "MaxwellMethod", "NoRootError", "PhaseGrid", "RunConfig",
    "SimState", "TimeSeries", "WEIBEL_PARAMS", "continuous_D", "energies", "find_root",
    "gauss_residual", "growth_rate_scan", "init_landau", "init_weibel", "limit_errors",
    "mode_amplitudes", "plasma_Z", "run", "run_convergence_in_c", "run_order_study",
    "semidiscrete_matrix", "stability_function", "step", "step_first_order",
    "step_limit_vlasov_ampere", "step_strang",
]
