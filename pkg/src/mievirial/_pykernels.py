"""Pure-Python versions of the hot numerical loops.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
``mievirial.kernels`` picks one of the two at import time; the results agree
to a few ulps.
"""

import math

EPS = 2.220446049250313e-16
_SPLITTER = 134217729.0  # 2**27 + 1
_LOG_SAFE = 700.0

# 15-point Kronrod nodes on [0, 1] (descending) with the embedded 7-point
# Gauss rule at the odd positions and the centre.
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


# --------------------------------------------------------------------------
# general-series summand loop
# --------------------------------------------------------------------------

def mie_series_sum(n, m, t_star, tol, max_terms, fixed_terms=0):
    """Sum ``sum_k Gamma((k m - 3)/n) / k! * t_star**(-(n - m) k / n)``.

    Stops after two consecutive terms below ``tol * |partial sum|``, or after
    exactly ``fixed_terms`` terms when that is positive.

    Returns ``(total, terms_used, last_term_magnitude, converged)``.
    """
    log_x = -(n - m) / n * math.log(t_star)
    limit = fixed_terms if fixed_terms > 0 else max_terms
    total = 0.0
    last = 0.0
    small = 0
    for k in range(limit):
        arg = (k * m - 3.0) / n
        expo = k * log_x
        if k < 170 and arg < 170.0 and abs(expo) < _LOG_SAFE:
            term = math.gamma(arg) / math.gamma(k + 1.0) * math.exp(expo)
        else:
            # k >= 1 here, so arg > 0 and the term is positive
            term = math.exp(math.lgamma(arg) - math.lgamma(k + 1.0) + expo)
        total += term
        last = abs(term)
        if fixed_terms > 0:
            continue
        if last <= tol * abs(total):
            small += 1
            if small >= 2:
                return total, k + 1, last, True
        else:
            small = 0
    return total, limit, last, fixed_terms > 0


# --------------------------------------------------------------------------
# Generalized hypergeometric series
# --------------------------------------------------------------------------

def pfq_sum(upper, lower, z, tol, max_terms):
    """Plain double-precision pFq partial sums by term recurrence.

    Returns ``(total, terms_used, last_term_magnitude, converged, abs_sum)``
    where ``abs_sum`` is the sum of term magnitudes (a cancellation gauge).
    """
    term = 1.0
    total = 1.0
    abs_sum = 1.0
    small = 0
    for k in range(max_terms - 1):
        ratio = z / (k + 1.0)
        for a in upper:
            ratio *= a + k
        for b in lower:
            ratio /= b + k
        term *= ratio
        total += term
        mag = abs(term)
        abs_sum += mag
        if mag <= tol * abs(total):
            small += 1
            if small >= 2:
                return total, k + 2, mag, True, abs_sum
        else:
            small = 0
    return total, max_terms, abs(term), False, abs_sum


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ahi = t - (t - a)
    alo = a - ahi
    t = _SPLITTER * b
    bhi = t - (t - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    t, f = _two_sum(alo, blo)
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


def _dd_mul(ahi, alo, bhi, blo):
    p, e = _two_prod(ahi, bhi)
    e += ahi * blo + alo * bhi
    return _quick_two_sum(p, e)


def _dd_mul_d(ahi, alo, b):
    p, e = _two_prod(ahi, b)
    e += alo * b
    return _quick_two_sum(p, e)


def _dd_div(ahi, alo, bhi, blo):
    q1 = ahi / bhi
    phi, plo = _dd_mul_d(bhi, blo, q1)
    rhi, rlo = _dd_add(ahi, alo, -phi, -plo)
    q2 = rhi / bhi
    phi, plo = _dd_mul_d(bhi, blo, q2)
    rhi, rlo = _dd_add(rhi, rlo, -phi, -plo)
    q3 = rhi / bhi
    q1, q2 = _quick_two_sum(q1, q2)
    return _dd_add(q1, q2, q3, 0.0)


def pfq_sum_dd(upper, lower, z, tol, max_terms):
    """Same contract as :func:`pfq_sum`, carried in double-double arithmetic.

    Used when the double sum shows heavy cancellation (alternating series
    with large intermediate terms).
    """
    thi, tlo = 1.0, 0.0
    shi, slo = 1.0, 0.0
    abs_sum = 1.0
    small = 0
    mag = 1.0
    for k in range(max_terms - 1):
        nhi, nlo = z, 0.0
        for a in upper:
            ahi, alo = _two_sum(a, float(k))
            nhi, nlo = _dd_mul(nhi, nlo, ahi, alo)
        dhi, dlo = k + 1.0, 0.0
        for b in lower:
            bhi, blo = _two_sum(b, float(k))
            dhi, dlo = _dd_mul(dhi, dlo, bhi, blo)
        thi, tlo = _dd_mul(thi, tlo, nhi, nlo)
        thi, tlo = _dd_div(thi, tlo, dhi, dlo)
        shi, slo = _dd_add(shi, slo, thi, tlo)
        mag = abs(thi)
        abs_sum += mag
        if mag <= tol * abs(shi):
            small += 1
            if small >= 2:
                return shi + slo, k + 2, mag, True, abs_sum
        else:
            small = 0
    return shi + slo, max_terms, mag, False, abs_sum


# --------------------------------------------------------------------------
# Gauss-Kronrod panel over the reduced Mie integrand
# --------------------------------------------------------------------------

def mie_integrand(x, n, m, inv_t, piece):
    """Reduced integrand of the defining integral on one of the two pieces.

    piece 0: ``(exp(-(x**-n - x**-m) / T*) - 1) * x**2`` on x in (0, 1].
    piece 1: ``(exp(-(t**n - t**m) / T*) - 1) / t**4`` on t = 1/x in (0, 1].
    """
    if piece == 0:
        lx = -math.log(x)
        if n * lx > _LOG_SAFE:
            return -x * x
        y = -(math.exp(n * lx) - math.exp(m * lx)) * inv_t
        if y < -_LOG_SAFE:
            return -x * x
        return math.expm1(y) * x * x
    y = -(x ** n - x ** m) * inv_t
    return math.expm1(y) / (x * x * x * x)


def gk15_mie(a, b, n, m, inv_t, piece):
    """One 15-point Gauss-Kronrod panel on [a, b].

    Returns ``(result, abserr)`` with the usual QUADPACK error heuristic.
    """
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = mie_integrand(centr, n, m, inv_t, piece)
    resg = fc * WG[3]
    resk = fc * WGK[7]
    resabs = abs(resk)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        absc = hlgth * XGK[j]
        f1 = mie_integrand(centr - absc, n, m, inv_t, piece)
        f2 = mie_integrand(centr + absc, n, m, inv_t, piece)
        fv1[j] = f1
        fv2[j] = f2
        fsum = f1 + f2
        resk += WGK[j] * fsum
        resabs += WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg += WG[j // 2] * fsum
    reskh = 0.5 * resk
    resasc = WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > 2.2250738585072014e-308 / (50.0 * EPS):
        abserr = max(50.0 * EPS * resabs, abserr)
    return result, abserr
