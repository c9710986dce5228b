# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops; same contracts as ``_pykernels``.

Build without -ffast-math: the double-double routines rely on strict IEEE
rounding.
"""

from libc.math cimport exp, expm1, log, lgamma, tgamma, fabs, pow, fmin, fmax
from libc.stdlib cimport malloc, free

cdef double EPS = 2.220446049250313e-16
cdef double SPLITTER = 134217729.0
cdef double LOG_SAFE = 700.0

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]
XGK[:] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
WGK[:] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
WG[:] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]


def mie_series_sum(double n, double m, double t_star, double tol,
                   long max_terms, long fixed_terms=0):
    cdef double log_x = -(n - m) / n * log(t_star)
    cdef long limit = fixed_terms if fixed_terms > 0 else max_terms
    cdef double total = 0.0, last = 0.0, term, arg, expo
    cdef int small = 0
    cdef long k
    for k in range(limit):
        arg = (k * m - 3.0) / n
        expo = k * log_x
        if k < 170 and arg < 170.0 and fabs(expo) < LOG_SAFE:
            term = tgamma(arg) / tgamma(k + 1.0) * exp(expo)
        else:
            term = exp(lgamma(arg) - lgamma(k + 1.0) + expo)
        total += term
        last = fabs(term)
        if fixed_terms > 0:
            continue
        if last <= tol * fabs(total):
            small += 1
            if small >= 2:
                return total, k + 1, last, True
        else:
            small = 0
    return total, limit, last, fixed_terms > 0


cdef double* _to_array(seq, Py_ssize_t* size) except NULL:
    cdef Py_ssize_t i, count = len(seq)
    cdef double* out = <double*> malloc((count + 1) * sizeof(double))
    if out == NULL:
        raise MemoryError()
    for i in range(count):
        out[i] = seq[i]
    size[0] = count
    return out


def pfq_sum(upper, lower, double z, double tol, long max_terms):
    cdef Py_ssize_t p, q, i
    cdef double* a = _to_array(upper, &p)
    cdef double* b = _to_array(lower, &q)
    cdef double term = 1.0, total = 1.0, abs_sum = 1.0, ratio, mag = 1.0
    cdef int small = 0
    cdef long k
    try:
        for k in range(max_terms - 1):
            ratio = z / (k + 1.0)
            for i in range(p):
                ratio *= a[i] + k
            for i in range(q):
                ratio /= b[i] + k
            term *= ratio
            total += term
            mag = fabs(term)
            abs_sum += mag
            if mag <= tol * fabs(total):
                small += 1
                if small >= 2:
                    return total, k + 2, mag, True, abs_sum
            else:
                small = 0
        return total, max_terms, fabs(term), False, abs_sum
    finally:
        free(a)
        free(b)


cdef struct dd:
    double hi
    double lo


cdef inline dd _two_sum(double a, double b):
    cdef dd r
    cdef double bb
    r.hi = a + b
    bb = r.hi - a
    r.lo = (a - (r.hi - bb)) + (b - bb)
    return r


cdef inline dd _quick_two_sum(double a, double b):
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline dd _two_prod(double a, double b):
    cdef dd r
    cdef double t, ahi, alo, bhi, blo
    r.hi = a * b
    t = SPLITTER * a
    ahi = t - (t - a)
    alo = a - ahi
    t = SPLITTER * b
    bhi = t - (t - b)
    blo = b - bhi
    r.lo = ((ahi * bhi - r.hi) + ahi * blo + alo * bhi) + alo * blo
    return r


cdef inline dd _dd_add(dd a, dd b):
    cdef dd s = _two_sum(a.hi, b.hi)
    cdef dd t = _two_sum(a.lo, b.lo)
    s.lo += t.hi
    s = _quick_two_sum(s.hi, s.lo)
    s.lo += t.lo
    return _quick_two_sum(s.hi, s.lo)


cdef inline dd _dd_mul(dd a, dd b):
    cdef dd p = _two_prod(a.hi, b.hi)
    p.lo += a.hi * b.lo + a.lo * b.hi
    return _quick_two_sum(p.hi, p.lo)


cdef inline dd _dd_mul_d(dd a, double b):
    cdef dd p = _two_prod(a.hi, b)
    p.lo += a.lo * b
    return _quick_two_sum(p.hi, p.lo)


cdef inline dd _dd_div(dd a, dd b):
    cdef double q1, q2, q3
    cdef dd p, r, q, c
    q1 = a.hi / b.hi
    p = _dd_mul_d(b, q1)
    p.hi = -p.hi
    p.lo = -p.lo
    r = _dd_add(a, p)
    q2 = r.hi / b.hi
    p = _dd_mul_d(b, q2)
    p.hi = -p.hi
    p.lo = -p.lo
    r = _dd_add(r, p)
    q3 = r.hi / b.hi
    q = _quick_two_sum(q1, q2)
    c.hi = q3
    c.lo = 0.0
    return _dd_add(q, c)


def pfq_sum_dd(upper, lower, double z, double tol, long max_terms):
    cdef Py_ssize_t p, q, i
    cdef double* a = _to_array(upper, &p)
    cdef double* b = _to_array(lower, &q)
    cdef dd t, s, num, den
    cdef double abs_sum = 1.0, mag = 1.0
    cdef int small = 0
    cdef long k
    t.hi = 1.0
    t.lo = 0.0
    s.hi = 1.0
    s.lo = 0.0
    try:
        for k in range(max_terms - 1):
            num.hi = z
            num.lo = 0.0
            for i in range(p):
                num = _dd_mul(num, _two_sum(a[i], <double> k))
            den.hi = k + 1.0
            den.lo = 0.0
            for i in range(q):
                den = _dd_mul(den, _two_sum(b[i], <double> k))
            t = _dd_mul(t, num)
            t = _dd_div(t, den)
            s = _dd_add(s, t)
            mag = fabs(t.hi)
            abs_sum += mag
            if mag <= tol * fabs(s.hi):
                small += 1
                if small >= 2:
                    return s.hi + s.lo, k + 2, mag, True, abs_sum
            else:
                small = 0
        return s.hi + s.lo, max_terms, mag, False, abs_sum
    finally:
        free(a)
        free(b)


cdef inline double _integrand(double x, double n, double m, double inv_t, int piece):
    cdef double lx, y
    if piece == 0:
        lx = -log(x)
        if n * lx > LOG_SAFE:
            return -x * x
        y = -(exp(n * lx) - exp(m * lx)) * inv_t
        if y < -LOG_SAFE:
            return -x * x
        return expm1(y) * x * x
    y = -(pow(x, n) - pow(x, m)) * inv_t
    return expm1(y) / (x * x * x * x)


def mie_integrand(double x, double n, double m, double inv_t, int piece):
    return _integrand(x, n, m, inv_t, piece)


def gk15_mie(double a, double b, double n, double m, double inv_t, int piece):
    cdef double centr = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double fc = _integrand(centr, n, m, inv_t, piece)
    cdef double resg = fc * WG[3]
    cdef double resk = fc * WGK[7]
    cdef double resabs = fabs(resk)
    cdef double fv1[7]
    cdef double fv2[7]
    cdef double absc, f1, f2, fsum, reskh, resasc, result, abserr
    cdef int j
    for j in range(7):
        absc = hlgth * XGK[j]
        f1 = _integrand(centr - absc, n, m, inv_t, piece)
        f2 = _integrand(centr + absc, n, m, inv_t, piece)
        fv1[j] = f1
        fv2[j] = f2
        fsum = f1 + f2
        resk += WGK[j] * fsum
        resabs += WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += WG[j // 2] * fsum
    reskh = 0.5 * resk
    resasc = WGK[7] * fabs(fc - reskh)
    for j in range(7):
        resasc += WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= fabs(hlgth)
    resasc *= fabs(hlgth)
    abserr = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * fmin(1.0, pow(200.0 * abserr / resasc, 1.5))
    if resabs > 2.2250738585072014e-308 / (50.0 * EPS):
        abserr = fmax(50.0 * EPS * resabs, abserr)
    return result, abserr
