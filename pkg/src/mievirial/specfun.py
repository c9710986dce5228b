"""Real special functions: gamma, Pochhammer, pFq, asymptotic 2F0, I_nu.

Everything works in IEEE double precision. Hypergeometric sums that cancel
badly are re-summed in double-double arithmetic, which keeps alternating
series (negative arguments) accurate without arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .errors import ConvergenceError, GammaOverflowError, ParameterError, PoleError, DomainError

DEFAULT_TOLERANCE = 1e-12
TERM_BUDGET = 10_000

_EPS = 2.220446049250313e-16


def _is_nonpositive_integer(x) -> bool:
    return x <= 0 and x == math.floor(x)


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters and argument of a ``pFq(upper; lower; argument)`` request."""

    upper: tuple
    lower: tuple
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        object.__setattr__(self, "argument", float(self.argument))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise ParameterError(f"lower parameter {b!r} is a non-positive integer")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


@dataclass(frozen=True)
class SeriesEvaluation:
    """Result of summing a series.

    ``last_term_magnitude`` is the size of the last term summed for
    convergent series. For asymptotic sums it is the size of the first
    omitted term, which doubles as the error estimate.
    """

    value: float
    terms_used: int
    last_term_magnitude: float
    converged: bool


# ---------------------------------------------------------------------------
# Gamma and friends
# ---------------------------------------------------------------------------

def gamma(x: float) -> float:
    """Gamma function for real ``x`` away from the poles 0, -1, -2, ...

    Raises
    ------
    PoleError
        If ``x`` is a non-positive integer.
    GammaOverflowError
        If ``|Gamma(x)|`` exceeds the double range; use :func:`log_gamma`.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x!r}", argument=x)
    try:
        return math.gamma(x)
    except OverflowError:
        raise GammaOverflowError(f"gamma({x!r}) overflows a double") from None


def log_gamma(x: float) -> float:
    """``log|Gamma(x)|``; pair with :func:`gamma_sign` for negative ``x``."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x!r}", argument=x)
    return math.lgamma(x)


def gamma_sign(x: float) -> int:
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x!r}", argument=x)
    if x > 0:
        return 1
    # Gamma alternates in sign between consecutive negative integers
    return -1 if math.floor(x) % 2 else 1


def rgamma(x: float) -> float:
    """Reciprocal gamma, zero at the poles."""
    if _is_nonpositive_integer(float(x)):
        return 0.0
    return 1.0 / gamma(x)


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k = a (a+1) ... (a+k-1)`` with ``(a)_0 = 1``.

    Computed as a product, so it is finite at non-positive integer ``a`` and
    it keeps exact types: a :class:`fractions.Fraction` in gives one out.
    """
    if k < 0:
        raise DomainError("pochhammer needs a nonnegative integer count")
    out = a * 0 + 1
    for i in range(k):
        out *= a + i
    return out


# ---------------------------------------------------------------------------
# Hypergeometric series
# ---------------------------------------------------------------------------

def pfq(spec: HypergeometricSpec, tolerance: float = DEFAULT_TOLERANCE,
        max_terms: int = TERM_BUDGET) -> SeriesEvaluation:
    """Sum the generalized hypergeometric series for ``p <= q``.

    Terms follow the recurrence
    ``t_{k+1} = t_k * prod(a_i + k) / prod(b_j + k) * z / (k + 1)`` and the sum
    stops once two consecutive terms fall below ``tolerance * |partial sum|``.

    Raises
    ------
    ParameterError
        ``p > q`` (the series is not entire) or ``tolerance <= 0``.
    ConvergenceError
        The term budget ran out; the partial result is attached.
    """
    if spec.p > spec.q:
        raise ParameterError(f"pfq needs p <= q, got p={spec.p}, q={spec.q}")
    if not tolerance > 0:
        raise ParameterError("tolerance must be positive")
    if spec.argument == 0.0:
        return SeriesEvaluation(1.0, 1, 0.0, True)
    total, used, last, ok, abs_sum = kernels.pfq_sum(
        spec.upper, spec.lower, spec.argument, tolerance, max_terms)
    if ok and abs_sum * 64.0 * _EPS > tolerance * abs(total):
        total, used, last, ok, abs_sum = kernels.pfq_sum_dd(
            spec.upper, spec.lower, spec.argument, tolerance, max_terms)
    result = SeriesEvaluation(total, used, last, ok)
    if not ok:
        raise ConvergenceError(
            f"pfq did not converge within {max_terms} terms", evaluation=result)
    return result


def hyp1f1(a: float, b: float, z: float, tolerance: float = DEFAULT_TOLERANCE) -> SeriesEvaluation:
    """Kummer's function, a thin wrapper over :func:`pfq`."""
    return pfq(HypergeometricSpec((a,), (b,), z), tolerance)


def pfq_asymptotic_2f0(a1: float, a2: float, argument: float,
                       max_order: Optional[int] = None,
                       max_terms: int = TERM_BUDGET) -> SeriesEvaluation:
    """Truncated sum of the divergent series ``2F0(a1, a2; ; z)``.

    With ``max_order`` the terms of order ``0..max_order`` are summed and
    ``converged`` says whether that order is within the optimal-truncation
    horizon. Without it the sum stops just before the smallest term (the
    first term no larger than both neighbours), whose magnitude is returned as
    ``last_term_magnitude``.
    """
    z = float(argument)
    if z == 0.0:
        return SeriesEvaluation(1.0, 1, 0.0, True)
    term = 1.0
    total = 0.0
    optimal = None
    limit = max_terms if max_order is None else max_order + 1
    k = 0
    while k < limit:
        nxt = term * (a1 + k) * (a2 + k) * z / (k + 1)
        if optimal is None and nxt != 0.0 and abs(nxt) > abs(term):
            optimal = k
            if max_order is None:
                return SeriesEvaluation(total, k, abs(term), True)
        total += term
        if term == 0.0:
            # the series terminates: (a1)_k or (a2)_k hit zero
            return SeriesEvaluation(total, k + 1, 0.0, True)
        term = nxt
        k += 1
    if max_order is None:
        return SeriesEvaluation(total, k, abs(term), False)
    # no growth seen up to max_order means the smallest term lies beyond it
    within = optimal is None or max_order < optimal
    return SeriesEvaluation(total, k, abs(term), within)


def bessel_i(order: float, argument: float, tolerance: float = 1e-13) -> float:
    """Modified Bessel function ``I_nu(x)`` of the first kind from its power series.

    Terms where ``Gamma(k + nu + 1)`` sits at a pole contribute zero, which
    gives ``I_{-n} = I_n`` for integer ``n``.
    """
    nu = float(order)
    x = float(argument)
    if x < 0:
        raise DomainError("bessel_i is only defined here for argument >= 0")
    nu_int = nu == math.floor(nu)
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        if nu > 0 or nu_int:
            return 0.0
        raise DomainError(f"I_{nu}(0) is infinite")
    k = 0
    if nu < 0 and nu_int:
        k = int(-nu)
    half = 0.5 * x
    lead = (2 * k + nu) * math.log(half) - math.lgamma(k + 1.0)
    try:
        term = math.exp(lead) * rgamma(k + nu + 1.0)
    except GammaOverflowError:
        term = math.exp(lead - math.lgamma(k + nu + 1.0)) * gamma_sign(k + nu + 1.0)
    total = term
    q = half * half
    small = 0
    for _ in range(TERM_BUDGET):
        term *= q / ((k + 1.0) * (k + 1.0 + nu))
        k += 1
        total += term
        if abs(term) <= tolerance * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise ConvergenceError(f"bessel_i({nu}, {x}) did not converge")
