"""Direct quadrature of the defining integral of B, with no series machinery.

With ``x = r / sigma`` the integral splits at ``x = 1``, where u changes sign:

* core, ``x in (0, 1]``: ``(exp(-(x**-n - x**-m)/T*) - 1) x**2``,
* tail, mapped by ``t = 1/x`` onto ``(0, 1]``: ``(exp(-(t**n - t**m)/T*) - 1) / t**4``.

Near ``t = 0`` the tail integrand behaves like ``t**(m-4) / T*``, which is
integrable because ``m > 3``, so a plain Gauss-Kronrod rule needs no special
weights. ``B = -2 pi sigma**3 (core + tail)``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from . import kernels
from .errors import DomainError, ToleranceNotMetError
from .mie import MiePotential, as_t_star

MAX_SUBDIVISIONS = 2000
DEFAULT_ABS_TOL = 1e-13
DEFAULT_REL_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureReport:
    """``value`` is B / sigma**3."""

    value: float
    abs_error_estimate: float
    evaluations: int
    subdivisions: int


def integrand(x: float, p: MiePotential, t_star: float, piece: int) -> float:
    """Reduced integrand on piece 0 (core) or piece 1 (tail, in t = 1/x)."""
    return kernels.mie_integrand(x, p.n, p.m, 1.0 / t_star, piece)


def quadrature_b(p: MiePotential, t, abs_tol: float = DEFAULT_ABS_TOL,
                 rel_tol: float = DEFAULT_REL_TOL,
                 max_subdivisions: int = MAX_SUBDIVISIONS) -> QuadratureReport:
    """Adaptive 15-point Gauss-Kronrod evaluation of B / sigma**3.

    The panel with the largest error estimate is bisected until the summed
    estimate meets ``max(abs_tol, rel_tol * |value|)``, both measured on
    B / sigma**3. Panel order is deterministic, so evaluation counts are
    reproducible.

    Raises
    ------
    ToleranceNotMetError
        After ``max_subdivisions`` bisections; carries the best report.
    """
    t_star = as_t_star(t)
    if not (abs_tol > 0 and rel_tol > 0):
        raise DomainError("quadrature tolerances must be positive")
    n, m, inv_t = p.n, p.m, 1.0 / t_star
    heap = []
    total = 0.0
    err_total = 0.0
    serial = 0
    for piece in (0, 1):
        val, err = kernels.gk15_mie(0.0, 1.0, n, m, inv_t, piece)
        heapq.heappush(heap, (-err, serial, 0.0, 1.0, piece, val, err))
        serial += 1
        total += val
        err_total += err
    evaluations = 30
    subdivisions = 0
    scale = -2.0 * math.pi
    two_pi = 2.0 * math.pi
    while two_pi * err_total > max(abs_tol, rel_tol * two_pi * abs(total)):
        if subdivisions >= max_subdivisions:
            report = QuadratureReport(scale * total, 2.0 * math.pi * err_total,
                                      evaluations, subdivisions)
            raise ToleranceNotMetError(
                f"quadrature missed tolerance after {subdivisions} subdivisions "
                f"(error estimate {report.abs_error_estimate:.3g})", evaluation=report)
        _, _, a, b, piece, val, err = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        v1, e1 = kernels.gk15_mie(a, mid, n, m, inv_t, piece)
        v2, e2 = kernels.gk15_mie(mid, b, n, m, inv_t, piece)
        evaluations += 30
        subdivisions += 1
        total += v1 + v2 - val
        err_total += e1 + e2 - err
        heapq.heappush(heap, (-e1, serial, a, mid, piece, v1, e1))
        heapq.heappush(heap, (-e2, serial + 1, mid, b, piece, v2, e2))
        serial += 2
    # re-add from scratch to shed drift from the running updates
    total = math.fsum(item[5] for item in heap)
    err_total = math.fsum(item[6] for item in heap)
    return QuadratureReport(scale * total, 2.0 * math.pi * err_total, evaluations, subdivisions)


def _whole_integrand(x: float, n: float, m: float, inv_t: float) -> float:
    if x <= 1.0:
        return kernels.mie_integrand(x, n, m, inv_t, 0)
    t = 1.0 / x
    return math.expm1(-(t ** n - t ** m) * inv_t) * x * x


def tanh_sinh_b(p: MiePotential, t, tol: float = 1e-12, max_level: int = 10) -> tuple:
    """Whole-line double-exponential (exp-sinh) cross-check of B / sigma**3.

    Uses ``x = exp(pi/2 sinh s)`` on ``[0, inf)`` with step halving until two
    successive levels agree to ``tol`` relative. Returns ``(value, error)``.
    """
    t_star = as_t_star(t)
    n, m, inv_t = p.n, p.m, 1.0 / t_star
    half_pi = 0.5 * math.pi
    s_max = 4.5

    def weighted(s):
        e = half_pi * math.sinh(s)
        if e > 700.0 or e < -700.0:
            return 0.0
        x = math.exp(e)
        return _whole_integrand(x, n, m, inv_t) * half_pi * math.cosh(s) * x

    h = 0.5
    count = int(s_max / h)
    acc = weighted(0.0) + sum(weighted(j * h) + weighted(-j * h) for j in range(1, count + 1))
    estimate = acc * h
    error = abs(estimate)
    for _ in range(max_level):
        h *= 0.5
        count = int(s_max / h)
        acc += sum(weighted(j * h) + weighted(-j * h) for j in range(1, count + 1, 2))
        new = acc * h
        error = abs(new - estimate)
        estimate = new
        if error <= tol * abs(estimate):
            break
    return -2.0 * math.pi * estimate, 2.0 * math.pi * error
