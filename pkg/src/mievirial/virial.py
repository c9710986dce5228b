"""Second virial coefficient of the Mie potential, by every available route.

All routes return B / sigma**3 inside a :class:`VirialResult`. The reduced
value ``b_reduced`` divides further by the hard-sphere-like scale 2 pi / 3.

Routes
------
GeneralSeries       gamma-function series in T*, any n > m > 3
KummerN2M           two 1F1 functions, n = 2m
LennardJones1F1     n = 2m form at m = 6 written in kT/epsilon
LennardJonesBessel  four modified Bessel functions, (12, 6)
NineSix             two 1F1 plus one 2F2, (9, 6)
Explicit84/104      finite sums of 1F1 / 2F4, (8, 4) and (10, 4)
LowTAsymptotic      truncated 2F0 expansion, n = 2m or (9, 6)
HighTLeading        k = 0 term of the general series
Quadrature          direct integration (see :mod:`mievirial.oracle`)
Brackets            method-of-brackets engine (see :mod:`mievirial.brackets`)
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import brackets, kernels, oracle
from .errors import BracketNotFoundError, ConvergenceError, DomainError, ToleranceNotMetError
from .mie import MiePotential, as_t_star, mie_prefactor
from .specfun import (DEFAULT_TOLERANCE, TERM_BUDGET, HypergeometricSpec, bessel_i, gamma,
                      pfq, pfq_asymptotic_2f0, pochhammer)

REDUCED_SCALE = 2.0 * math.pi / 3.0


class Method(enum.Enum):
    GENERAL_SERIES = "GeneralSeries"
    KUMMER_N2M = "KummerN2M"
    LJ_1F1 = "LennardJones1F1"
    LJ_BESSEL = "LennardJonesBessel"
    NINE_SIX = "NineSix"
    EXPLICIT_84 = "Explicit84"
    EXPLICIT_104 = "Explicit104"
    LOW_T_ASYMPTOTIC = "LowTAsymptotic"
    HIGH_T_LEADING = "HighTLeading"
    QUADRATURE = "Quadrature"
    BRACKETS = "Brackets"


APPROXIMATE_METHODS = (Method.LOW_T_ASYMPTOTIC, Method.HIGH_T_LEADING)


@dataclass(frozen=True)
class VirialResult:
    b_over_sigma3: float
    method: Method
    terms_used: int
    error_estimate: float
    sigma: float = 1.0

    @property
    def b_reduced(self) -> float:
        return self.b_over_sigma3 / REDUCED_SCALE

    @property
    def b(self) -> float:
        """B in units of length**3."""
        return self.b_over_sigma3 * self.sigma ** 3


def _result(b_raw, sigma, method, terms, err_raw):
    s3 = sigma ** 3
    return VirialResult(b_raw / s3, method, terms, abs(err_raw) / s3, sigma)


def _finite(result, t_star):
    """B grows like exp(1/tau) in the cold limit; an overflow is reported, not returned."""
    if not math.isfinite(result.b_over_sigma3):
        raise ConvergenceError(
            f"{result.method.value}: B overflows a double at T* = {t_star:g}", evaluation=result)
    return result


def _check_sigma(sigma):
    if not sigma > 0:
        raise DomainError("sigma must be positive")


# ---------------------------------------------------------------------------
# General series
# ---------------------------------------------------------------------------

def b_general_series(p: MiePotential, t, tolerance: float = DEFAULT_TOLERANCE,
                     max_terms: int = TERM_BUDGET, n_terms: Optional[int] = None) -> VirialResult:
    """B from the gamma-function series in ``T*``.

    ``B = -(2 pi sigma^3 / n) T*^(-3/n) sum_k Gamma((k m - 3)/n) / k! T*^(-(n-m) k / n)``

    Only the k = 0 term is negative, so the sum has no internal cancellation
    apart from that one term. Pass ``n_terms`` to sum a fixed number of terms
    instead of stopping on the tolerance.

    Raises
    ------
    ConvergenceError
        Term budget exhausted, or B itself overflows (T* below about 1e-4 for
        Lennard-Jones).
    """
    t_star = as_t_star(t)
    n, m, sigma = p.n, p.m, p.sigma
    total, used, last, ok = kernels.mie_series_sum(
        n, m, t_star, tolerance, max_terms, n_terms or 0)
    scale = -2.0 * math.pi / n * t_star ** (-3.0 / n) * sigma ** 3
    result = _result(scale * total, sigma, Method.GENERAL_SERIES, used, scale * last)
    if not ok:
        raise ConvergenceError(
            f"general series used all {max_terms} terms at T* = {t_star:g}", evaluation=result)
    return _finite(result, t_star)


def b_high_t_leading(p: MiePotential, t) -> VirialResult:
    """Leading high-temperature term ``-(2 pi / n) Gamma(-3/n) T*^(-3/n)``, which is positive.

    The error estimate is the size of the first neglected (k = 1) term.
    """
    t_star = as_t_star(t)
    n, m = p.n, p.m
    lead = -2.0 * math.pi / n * gamma(-3.0 / n) * t_star ** (-3.0 / n)
    nxt = 2.0 * math.pi / n * gamma((m - 3.0) / n) * t_star ** (-3.0 / n - (n - m) / n)
    return VirialResult(lead, Method.HIGH_T_LEADING, 1, abs(nxt), p.sigma)


# ---------------------------------------------------------------------------
# Closed hypergeometric forms
# ---------------------------------------------------------------------------

def _pfq_combination(terms, argument, tolerance):
    """Sum ``coef * pFq(upper; lower; argument)`` over ``terms``.

    Returns (value, terms_used, error) with the error built from each series'
    last-term magnitude.
    """
    value = 0.0
    used = 0
    err = 0.0
    for coef, upper, lower in terms:
        ev = pfq(HypergeometricSpec(upper, lower, argument), tolerance)
        value += coef * ev.value
        used += ev.terms_used
        err += abs(coef) * ev.last_term_magnitude
    return value, used, err


def b_kummer_n2m(m: float, sigma: float, t, tolerance: float = DEFAULT_TOLERANCE) -> VirialResult:
    """B for n = 2m through two Kummer functions of argument 1/(4 T*)."""
    if not m > 3:
        raise DomainError(f"n = 2m form needs m > 3, got m={m}")
    _check_sigma(sigma)
    t_star = as_t_star(t)
    c = 3.0 / (2.0 * m)
    pre = -math.pi / (m * t_star ** c)
    terms = [
        (pre * gamma(-c), (-c,), (0.5,)),
        (pre * gamma(0.5 - c) / math.sqrt(t_star), (0.5 - c,), (1.5,)),
    ]
    value, used, err = _pfq_combination(terms, 1.0 / (4.0 * t_star), tolerance)
    s3 = sigma ** 3
    return _result(value * s3, sigma, Method.KUMMER_N2M, used, err * s3)


def b_lj_1f1(sigma: float, kT_over_eps: float, tolerance: float = DEFAULT_TOLERANCE) -> VirialResult:
    """Lennard-Jones B written in ``tau = kT/epsilon`` with 1F1 of argument 1/tau."""
    _check_sigma(sigma)
    tau = float(kT_over_eps)
    if not tau > 0:
        raise DomainError("kT/epsilon must be positive")
    terms = [
        (-math.pi / (3.0 * math.sqrt(2.0) * tau ** 0.25) * gamma(-0.25), (-0.25,), (0.5,)),
        (-math.sqrt(2.0) * math.pi / (3.0 * tau ** 0.75) * gamma(0.25), (0.25,), (1.5,)),
    ]
    value, used, err = _pfq_combination(terms, 1.0 / tau, tolerance)
    s3 = sigma ** 3
    return _result(value * s3, sigma, Method.LJ_1F1, used, err * s3)


def b_lj_bessel(sigma: float, kT_over_eps: float, tolerance: float = 1e-13) -> VirialResult:
    """Lennard-Jones B from four modified Bessel functions of argument epsilon/(2kT).

    ``B = (sqrt 2 pi^2 sigma^3 / 3) (eps/kT) e^(eps/2kT)
          [I_{-3/4} + I_{3/4} - I_{1/4} - I_{-1/4}](eps/2kT)``
    """
    _check_sigma(sigma)
    tau = float(kT_over_eps)
    if not tau > 0:
        raise DomainError("kT/epsilon must be positive")
    z = 0.5 / tau
    values = [bessel_i(nu, z, tolerance) for nu in (-0.75, 0.75, 0.25, -0.25)]
    combo = values[0] + values[1] - values[2] - values[3]
    pre = math.sqrt(2.0) * math.pi ** 2 / 3.0 / tau * math.exp(z)
    err = abs(pre) * tolerance * sum(abs(v) for v in values)
    s3 = sigma ** 3
    return _result(pre * combo * s3, sigma, Method.LJ_BESSEL, 4, err * s3)


def b_nine_six(sigma: float, t, tolerance: float = DEFAULT_TOLERANCE) -> VirialResult:
    """B for (n, m) = (9, 6): the general series split by k mod 3.

    Two 1F1 and one 2F2, all with argument 4 / (27 T*).
    """
    _check_sigma(sigma)
    t_star = as_t_star(t)
    terms = [
        (-2.0 * math.pi / (9.0 * t_star ** (1.0 / 3.0)) * gamma(-1.0 / 3.0), (-1.0 / 6.0,), (2.0 / 3.0,)),
        (-2.0 * math.pi / (9.0 * t_star ** (2.0 / 3.0)) * gamma(1.0 / 3.0), (1.0 / 6.0,), (4.0 / 3.0,)),
        (-math.pi / (9.0 * t_star), (0.5, 1.0), (4.0 / 3.0, 5.0 / 3.0)),
    ]
    value, used, err = _pfq_combination(terms, 4.0 / (27.0 * t_star), tolerance)
    s3 = sigma ** 3
    return _result(value * s3, sigma, Method.NINE_SIX, used, err * s3)


# (coefficient, power of T*, upper, lower); argument 1/(4 T*)
EXPLICIT_84_TERMS = (
    (-math.pi * gamma(-3.0 / 8.0) / 4.0, -3.0 / 8.0, (-3.0 / 8.0,), (0.5,)),
    (-math.pi * gamma(1.0 / 8.0) / 4.0, -7.0 / 8.0, (1.0 / 8.0,), (1.5,)),
)

# argument 4 / (3125 T*^3)
EXPLICIT_104_TERMS = (
    (-math.pi ** 1.5 / 10.0, -1.5, (0.25, 0.75), (0.6, 0.8, 1.2, 1.4)),
    (-math.pi * gamma(-0.3) / 5.0, -0.3, (-0.15, 0.35), (0.2, 0.4, 0.6, 0.8)),
    (-math.pi * gamma(0.1) / 5.0, -0.9, (0.05, 0.55), (0.4, 0.6, 0.8, 1.2)),
    (-math.pi * gamma(0.9) / 30.0, -2.1, (0.45, 0.95), (0.8, 1.2, 1.4, 1.6)),
    (-math.pi * gamma(0.3) / 400.0, -2.7, (0.65, 1.15), (1.2, 1.4, 1.6, 1.8)),
)


def b_explicit_84_104(which: int, sigma: float, t, tolerance: float = DEFAULT_TOLERANCE) -> VirialResult:
    """Finite pFq sums for (8, 4) (two 1F1) and (10, 4) (five 2F4)."""
    _check_sigma(sigma)
    t_star = as_t_star(t)
    if which == 84:
        table, argument, method = EXPLICIT_84_TERMS, 1.0 / (4.0 * t_star), Method.EXPLICIT_84
    elif which == 104:
        table, argument, method = EXPLICIT_104_TERMS, 4.0 / (3125.0 * t_star ** 3), Method.EXPLICIT_104
    else:
        raise DomainError("which must be 84 or 104")
    terms = [(coef * t_star ** power, up, lo) for coef, power, up, lo in table]
    value, used, err = _pfq_combination(terms, argument, tolerance)
    s3 = sigma ** 3
    return _result(value * s3, sigma, method, used, err * s3)


# ---------------------------------------------------------------------------
# Low-temperature asymptotics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LowTFamily:
    """``B / sigma^3 ~ -C sqrt(tau) exp(1/tau) 2F0(a1, a2; ; tau)`` with ``tau = kT/eps``."""

    name: str
    a1: Fraction
    a2: Fraction
    log_constant: float
    constant_text: str

    def coefficients(self, order: int) -> list:
        """Exact 2F0 coefficients ``(a1)_k (a2)_k / k!`` for ``k = 0..order``."""
        return [pochhammer(self.a1, k) * pochhammer(self.a2, k) / math.factorial(k)
                for k in range(order + 1)]


SUPPORTED_LOW_T = "n = 2m (including Lennard-Jones 12-6) and (n, m) = (9, 6)"


def low_t_family(n: float, m: float) -> LowTFamily:
    if n == 9 and m == 6:
        return LowTFamily("(9,6)", Fraction(5, 6), Fraction(7, 6),
                          1.5 * math.log(math.pi) - 0.5 * math.log(3.0),
                          "pi^(3/2)/sqrt(3)")
    if n == 2 * m and m > 3:
        mq = brackets.as_fraction(m)
        return LowTFamily(
            f"n=2m (m={m:g})", (2 * mq + 3) / (2 * mq), (mq + 3) / (2 * mq),
            (1.0 + 3.0 / m) * math.log(2.0) + 1.5 * math.log(math.pi) - math.log(m),
            f"2^(1+3/{m:g}) pi^(3/2)/{m:g}")
    raise DomainError(f"low-temperature expansion is available only for {SUPPORTED_LOW_T}")


def b_low_t_asymptotic(p: MiePotential, kT_over_eps: float, order: Optional[int] = 2) -> VirialResult:
    """Low-temperature expansion truncated at ``order`` (None: optimal truncation).

    The factor ``exp(eps/kT)`` is kept in log space and recombined at the
    end. The error estimate is the first omitted 2F0 term times the
    prefactor; an order past the smallest term triggers a warning and the
    estimate is inflated to the largest term included beyond it.
    """
    tau = float(kT_over_eps)
    if not tau > 0:
        raise DomainError("kT/epsilon must be positive")
    fam = low_t_family(p.n, p.m)
    a1, a2 = float(fam.a1), float(fam.a2)
    ev = pfq_asymptotic_2f0(a1, a2, tau, max_order=order)
    err_series = ev.last_term_magnitude
    if order is not None and not ev.converged:
        warnings.warn(f"order {order} is past the optimal truncation point at kT/eps={tau:g}",
                      RuntimeWarning, stacklevel=2)
        best = pfq_asymptotic_2f0(a1, a2, tau)
        term, biggest = 1.0, 0.0
        for k in range(order + 1):
            if k >= best.terms_used:
                biggest = max(biggest, abs(term))
            term *= (a1 + k) * (a2 + k) * tau / (k + 1)
        err_series = max(err_series, biggest)
    log_pre = fam.log_constant + 0.5 * math.log(tau) + 1.0 / tau
    value = -math.exp(log_pre + math.log(abs(ev.value))) * math.copysign(1.0, ev.value)
    err = math.exp(log_pre) * err_series
    return VirialResult(value, Method.LOW_T_ASYMPTOTIC, ev.terms_used, err, p.sigma)


# ---------------------------------------------------------------------------
# Oracle and brackets wrappers
# ---------------------------------------------------------------------------

def b_quadrature(p: MiePotential, t, abs_tol: float = oracle.DEFAULT_ABS_TOL,
                 rel_tol: float = oracle.DEFAULT_REL_TOL) -> VirialResult:
    rep = oracle.quadrature_b(p, t, abs_tol, rel_tol)
    return VirialResult(rep.value, Method.QUADRATURE, rep.evaluations, rep.abs_error_estimate, p.sigma)


def b_brackets(p: MiePotential, t, tolerance: float = DEFAULT_TOLERANCE) -> VirialResult:
    ev = brackets.virial_from_brackets(p.n, p.m, as_t_star(t), p.sigma, tolerance)
    return _result(ev.value, p.sigma, Method.BRACKETS, ev.terms_used, ev.last_term_magnitude)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def applicable_methods(n: float, m: float, include_approximations: bool = False) -> list:
    """Methods valid for ``(n, m)``, in :class:`Method` order."""
    out = []
    for method in Method:
        if method in APPROXIMATE_METHODS and not include_approximations:
            continue
        if _applies(method, n, m):
            out.append(method)
    return out


def _applies(method: Method, n: float, m: float) -> bool:
    if method in (Method.GENERAL_SERIES, Method.QUADRATURE, Method.BRACKETS, Method.HIGH_T_LEADING):
        return True
    if method is Method.KUMMER_N2M:
        return n == 2 * m
    if method in (Method.LJ_1F1, Method.LJ_BESSEL):
        return (n, m) == (12, 6)
    if method is Method.NINE_SIX:
        return (n, m) == (9, 6)
    if method is Method.EXPLICIT_84:
        return (n, m) == (8, 4)
    if method is Method.EXPLICIT_104:
        return (n, m) == (10, 4)
    if method is Method.LOW_T_ASYMPTOTIC:
        return n == 2 * m or (n, m) == (9, 6)
    return False


def evaluate(method: Method, p: MiePotential, t, tolerance: float = DEFAULT_TOLERANCE,
             order: Optional[int] = 2) -> VirialResult:
    """Evaluate one route at ``T*``; raises DomainError when it does not apply."""
    if not _applies(method, p.n, p.m):
        raise DomainError(f"{method.value} does not apply to (n, m) = ({p.n:g}, {p.m:g})")
    t_star = as_t_star(t)
    try:
        result = _dispatch(method, p, t_star, tolerance, order)
    except OverflowError as exc:
        raise ConvergenceError(f"{method.value}: overflow at T* = {t_star:g} ({exc})") from None
    return _finite(result, t_star)


def _dispatch(method, p, t_star, tolerance, order):
    tau = t_star * p.prefactor
    if method is Method.GENERAL_SERIES:
        return b_general_series(p, t_star, tolerance)
    if method is Method.KUMMER_N2M:
        return b_kummer_n2m(p.m, p.sigma, t_star, tolerance)
    if method is Method.LJ_1F1:
        return b_lj_1f1(p.sigma, tau, tolerance)
    if method is Method.LJ_BESSEL:
        return b_lj_bessel(p.sigma, tau, min(tolerance, 1e-13))
    if method is Method.NINE_SIX:
        return b_nine_six(p.sigma, t_star, tolerance)
    if method is Method.EXPLICIT_84:
        return b_explicit_84_104(84, p.sigma, t_star, tolerance)
    if method is Method.EXPLICIT_104:
        return b_explicit_84_104(104, p.sigma, t_star, tolerance)
    if method is Method.LOW_T_ASYMPTOTIC:
        return b_low_t_asymptotic(p, tau, order)
    if method is Method.HIGH_T_LEADING:
        return b_high_t_leading(p, t_star)
    if method is Method.QUADRATURE:
        return b_quadrature(p, t_star)
    return b_brackets(p, t_star, tolerance)


# ---------------------------------------------------------------------------
# Boyle temperature
# ---------------------------------------------------------------------------

@dataclass
class BoyleSearch:
    root: float
    method: Method
    bracket: tuple
    history: list = field(default_factory=list)


def _geometric_grid(lo, hi, per_decade=4):
    count = int(round(math.log10(hi / lo) * per_decade))
    return [lo * (hi / lo) ** (i / count) for i in range(count + 1)]


def boyle_search(p: MiePotential, tolerance: float = 1e-12,
                 method: Method = Method.GENERAL_SERIES,
                 grid: tuple = (1e-2, 1e3), max_iter: int = 200,
                 b_func: Optional[Callable[[float], float]] = None) -> BoyleSearch:
    """Find T* with B(T*) = 0 by grid bracketing and bisection.

    The grid is scanned from the hot end down (B > 0 there) until B turns
    negative; if no sign change turns up the grid is widened by two decades
    on each side once. Bisection runs until the bracket's relative width is
    at most ``tolerance``.
    """
    if b_func is None:
        def b_func(ts):
            if method is Method.QUADRATURE:
                # near the root only the absolute tolerance can be met
                try:
                    return oracle.quadrature_b(p, ts, abs_tol=1e-14, rel_tol=1e-13).value
                except ToleranceNotMetError as exc:
                    return exc.evaluation.value
            return evaluate(method, p, ts, min(tolerance, DEFAULT_TOLERANCE) * 1e-2).b_over_sigma3

    def scan(lo, hi):
        pts = _geometric_grid(lo, hi)[::-1]
        prev_t, prev_b = pts[0], b_func(pts[0])
        for ts in pts[1:]:
            try:
                val = b_func(ts)
            except ConvergenceError:
                return None
            if val == 0.0:
                return ts, ts
            if (val < 0) != (prev_b < 0):
                return ts, prev_t
            prev_t, prev_b = ts, val
        return None

    found = scan(*grid) or scan(grid[0] * 1e-2, grid[1] * 1e2)
    if found is None:
        raise BracketNotFoundError(
            f"no sign change of B for (n, m) = ({p.n:g}, {p.m:g}) on T* in "
            f"[{grid[0] * 1e-2:g}, {grid[1] * 1e2:g}]")
    lo, hi = found
    search = BoyleSearch(root=lo, method=method, bracket=(lo, hi))
    if lo == hi:
        return search
    f_lo = b_func(lo)
    for _ in range(max_iter):
        search.history.append((lo, hi))
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= tolerance * mid:
            break
        f_mid = b_func(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    search.root = 0.5 * (lo + hi)
    search.bracket = (lo, hi)
    return search


def boyle_temperature(p: MiePotential, tolerance: float = 1e-12,
                      method: Method = Method.GENERAL_SERIES) -> float:
    """Reduced Boyle temperature ``T*_B`` where B changes sign."""
    return boyle_search(p, tolerance, method).root


__all__ = [
    "Method", "VirialResult", "b_general_series", "b_high_t_leading", "b_kummer_n2m",
    "b_lj_1f1", "b_lj_bessel", "b_nine_six", "b_explicit_84_104", "b_low_t_asymptotic",
    "b_quadrature", "b_brackets", "applicable_methods", "evaluate", "low_t_family",
    "LowTFamily", "boyle_search", "boyle_temperature", "BoyleSearch", "mie_prefactor",
]
