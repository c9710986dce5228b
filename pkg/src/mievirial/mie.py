"""The Mie (n, m) pair potential and its reduced temperature."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def _check_exponents(n: float, m: float) -> None:
    if not (math.isfinite(n) and math.isfinite(m)):
        raise DomainError("exponents must be finite")
    if not n > m:
        raise DomainError(f"need n > m, got n={n}, m={m}")
    if not m > 3:
        raise DomainError(f"need m > 3 for a finite second virial coefficient, got m={m}")


def mie_prefactor(n: float, m: float) -> float:
    """``A = n/(n-m) * (n/m)**(m/(n-m))``, which sets the well depth to -epsilon."""
    _check_exponents(n, m)
    return n / (n - m) * (n / m) ** (m / (n - m))


@dataclass(frozen=True)
class MiePotential:
    """Mie potential ``u(r) = eps * A * ((sigma/r)**n - (sigma/r)**m)``.

    Parameters
    ----------
    n, m : float
        Repulsive and attractive exponents, ``n > m > 3``. Need not be integers.
    sigma : float
        Length scale; ``u(sigma) = 0``.
    epsilon_depth : float
        Well depth. Only the ratio ``kT/epsilon`` ever enters a calculation.
    """

    n: float
    m: float
    sigma: float = 1.0
    epsilon_depth: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "n", float(self.n))
        object.__setattr__(self, "m", float(self.m))
        _check_exponents(self.n, self.m)
        if not self.sigma > 0:
            raise DomainError("sigma must be positive")
        if not self.epsilon_depth > 0:
            raise DomainError("epsilon_depth must be positive")

    @property
    def prefactor(self) -> float:
        return mie_prefactor(self.n, self.m)

    @property
    def r_min(self) -> float:
        """Location of the potential minimum."""
        return self.sigma * (self.n / self.m) ** (1.0 / (self.n - self.m))


@dataclass(frozen=True)
class ReducedTemperature:
    """``T*`` with ``1/T* = A epsilon / (k T)``."""

    t_star: float

    def __post_init__(self):
        object.__setattr__(self, "t_star", float(self.t_star))
        if not (self.t_star > 0 and math.isfinite(self.t_star)):
            raise DomainError(f"reduced temperature must be positive, got {self.t_star}")

    def __float__(self):
        return self.t_star


def prefactor(p: MiePotential) -> float:
    return mie_prefactor(p.n, p.m)


def potential_energy(p: MiePotential, r: float) -> float:
    """``u(r) / epsilon`` at separation ``r`` (same length units as sigma)."""
    if not r > 0:
        raise DomainError("separation must be positive")
    s = p.sigma / r
    return p.prefactor * (s ** p.n - s ** p.m)


def reduced_temperature(p: MiePotential, kT_over_eps: float) -> ReducedTemperature:
    if not kT_over_eps > 0:
        raise DomainError("kT/epsilon must be positive")
    return ReducedTemperature(kT_over_eps / p.prefactor)


def kT_over_eps(p: MiePotential, t) -> float:
    """Inverse of :func:`reduced_temperature`."""
    return as_t_star(t) * p.prefactor


def as_t_star(t) -> float:
    """Accept a :class:`ReducedTemperature` or a bare positive number."""
    if isinstance(t, ReducedTemperature):
        return t.t_star
    return ReducedTemperature(t).t_star
