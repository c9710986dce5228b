"""Second virial coefficient of the Mie (n, m) potential by several independent routes."""

__version__ = "0.1.0"

from .errors import (BracketNotFoundError, ConvergenceError, DomainError, MieVirialError,
                     NonRealSeriesError, ParameterError, PoleError, SingularSystemError,
                     ToleranceNotMetError)
from .kernels import BACKEND
from .mie import MiePotential, ReducedTemperature, reduced_temperature
from .virial import Method, VirialResult, boyle_temperature, evaluate

__all__ = [
    "BACKEND", "MiePotential", "ReducedTemperature", "reduced_temperature", "Method",
    "VirialResult", "evaluate", "boyle_temperature", "MieVirialError", "DomainError",
    "ParameterError", "PoleError", "ConvergenceError", "ToleranceNotMetError",
    "SingularSystemError", "NonRealSeriesError", "BracketNotFoundError",
]
