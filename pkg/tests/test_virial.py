import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mievirial import virial as v
from mievirial.errors import BracketNotFoundError, ConvergenceError, DomainError
from mievirial.mie import MiePotential, ReducedTemperature

from reference_values import B_GRID, BOYLE, HIGH_T_RATIO_MINUS_ONE, LJ_BY_KT, LOW_T_RATIO

M = v.Method
LJ = MiePotential(12, 6)
T_GRID = [0.3 * (100 / 0.3) ** (i / 24) for i in range(25)]


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("nm", list(B_GRID))
def test_general_series_reference(nm):
    p = MiePotential(*nm)
    for t, ref in B_GRID[nm].items():
        r = v.b_general_series(p, t)
        assert rel(r.b_over_sigma3, ref) < 1e-12
        assert r.method is M.GENERAL_SERIES
        assert r.terms_used > 1
        assert 0 <= r.error_estimate < 1e-10


def test_general_series_fixed_terms_and_budget():
    r = v.b_general_series(LJ, 1.0, n_terms=1)
    assert r.terms_used == 1
    assert r.b_over_sigma3 == pytest.approx(-2 * math.pi / 12 * math.gamma(-0.25), rel=1e-15)
    with pytest.raises(ConvergenceError) as info:
        v.b_general_series(LJ, 1e-3, max_terms=100)
    assert info.value.evaluation.terms_used == 100


def test_result_fields():
    r = v.b_general_series(MiePotential(12, 6, sigma=2.0), ReducedTemperature(1.0))
    assert r.sigma == 2.0
    assert r.b == pytest.approx(8 * r.b_over_sigma3)
    assert r.b_reduced == pytest.approx(r.b_over_sigma3 * 3 / (2 * math.pi))


@pytest.mark.parametrize("m", [4, 5, 6, 7, 4.5])
def test_kummer_matches_series(m):
    p = MiePotential(2 * m, m)
    for t in T_GRID:
        assert rel(v.b_kummer_n2m(m, 1.0, t).b_over_sigma3, v.b_general_series(p, t).b_over_sigma3) < 1e-10


def test_kummer_domain():
    with pytest.raises(DomainError):
        v.b_kummer_n2m(3, 1.0, 1.0)
    with pytest.raises(DomainError):
        v.b_kummer_n2m(6, -1.0, 1.0)


@pytest.mark.parametrize("kt", sorted(LJ_BY_KT))
def test_lj_forms_in_kt(kt):
    ref = LJ_BY_KT[kt]
    assert rel(v.b_lj_1f1(1.0, kt).b_over_sigma3, ref) < 1e-12
    assert rel(v.b_lj_bessel(1.0, kt).b_over_sigma3, ref) < 1e-11


def test_lj_bessel_carries_sqrt_two():
    # without sqrt(2) the four-Bessel form would miss by exactly that factor
    ratio = v.b_lj_bessel(1.0, 4.0).b_over_sigma3 / LJ_BY_KT[4.0]
    assert ratio == pytest.approx(1.0, rel=1e-12)


def test_nine_six_and_explicit_forms():
    p96, p84, p104 = MiePotential(9, 6), MiePotential(8, 4), MiePotential(10, 4)
    for t in T_GRID:
        assert rel(v.b_nine_six(1.0, t).b_over_sigma3, v.b_general_series(p96, t).b_over_sigma3) < 1e-10
        assert rel(v.b_explicit_84_104(84, 1.0, t).b_over_sigma3, v.b_general_series(p84, t).b_over_sigma3) < 1e-10
        assert rel(v.b_explicit_84_104(104, 1.0, t).b_over_sigma3, v.b_general_series(p104, t).b_over_sigma3) < 1e-9
    with pytest.raises(DomainError):
        v.b_explicit_84_104(96, 1.0, 1.0)


def test_explicit_104_large_t_leader():
    t = 1e8
    r = v.b_explicit_84_104(104, 1.0, t).b_over_sigma3
    lead = -math.pi / 5 * math.gamma(-0.3) * t ** -0.3
    assert r == pytest.approx(lead, rel=1e-3)


def test_explicit_84_second_exponent():
    # the Gamma(1/8) term falls off as T*^(-7/8), the same as the series' k = 1 term
    c, power, _, _ = v.EXPLICIT_84_TERMS[1]
    assert power == -7 / 8


@pytest.mark.parametrize("nm", list(HIGH_T_RATIO_MINUS_ONE))
def test_high_t_leading(nm):
    p = MiePotential(*nm)
    lead = v.b_high_t_leading(p, 1e6)
    full = v.b_general_series(p, 1e6)
    assert lead.b_over_sigma3 > 0
    assert lead.b_over_sigma3 / full.b_over_sigma3 - 1 == pytest.approx(
        -HIGH_T_RATIO_MINUS_ONE[nm] / (1 + HIGH_T_RATIO_MINUS_ONE[nm]), rel=1e-6)
    assert lead.error_estimate == pytest.approx(abs(lead.b_over_sigma3 - full.b_over_sigma3), rel=0.05)


class TestLowT:
    def test_families(self):
        assert v.low_t_family(12, 6).coefficients(3) == [1, Fraction(15, 16), Fraction(945, 512),
                                                         Fraction(45045, 8192)]
        assert v.low_t_family(9, 6).coefficients(2) == [1, Fraction(35, 36), Fraction(5005, 2592)]
        assert v.low_t_family(8, 4).coefficients(1) == [1, Fraction(77, 64)]
        with pytest.raises(DomainError):
            v.low_t_family(10, 4)

    @pytest.mark.parametrize("m", [4, 5, 6, 7, 8, Fraction(9, 2), Fraction(21, 5)])
    def test_general_n2m_coefficients(self, m):
        m = Fraction(m)
        c = v.low_t_family(float(2 * m), float(m)).coefficients(2)
        assert c[1] == (m + 3) * (2 * m + 3) / (4 * m * m)
        assert c[2] == 3 * (m + 3) * (2 * m + 3) * (m + 1) * (4 * m + 3) / (32 * m ** 4)

    @pytest.mark.parametrize("key", sorted(LOW_T_RATIO))
    def test_ratio_against_series(self, key):
        n, m, kt = key
        p = MiePotential(n, m)
        a = v.b_low_t_asymptotic(p, kt, order=2)
        exact = v.b_general_series(p, kt / p.prefactor)
        assert a.b_over_sigma3 / exact.b_over_sigma3 == pytest.approx(LOW_T_RATIO[key], rel=1e-10)
        assert abs(a.b_over_sigma3 - exact.b_over_sigma3) < 3 * a.error_estimate

    def test_optimal_truncation_beats_order_two(self):
        kt = 0.05
        exact = v.b_general_series(LJ, kt / 4).b_over_sigma3
        best = v.b_low_t_asymptotic(LJ, kt, order=None)
        two = v.b_low_t_asymptotic(LJ, kt, order=2)
        assert rel(best.b_over_sigma3, exact) < rel(two.b_over_sigma3, exact)
        assert rel(best.b_over_sigma3, exact) < 1e-7

    def test_past_optimum_warns(self):
        with pytest.warns(RuntimeWarning):
            r = v.b_low_t_asymptotic(LJ, 0.5, order=30)
        assert r.error_estimate > abs(r.b_over_sigma3)

    def test_no_warning_inside_horizon(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            v.b_low_t_asymptotic(LJ, 0.02, order=3)

    def test_deep_cold_stays_finite_in_log_space(self):
        r = v.b_low_t_asymptotic(LJ, 1.5e-3, order=2)
        assert math.isfinite(r.b_over_sigma3) and r.b_over_sigma3 < -1e200


def test_applicability():
    assert v.applicable_methods(12, 6) == [M.GENERAL_SERIES, M.KUMMER_N2M, M.LJ_1F1, M.LJ_BESSEL,
                                           M.QUADRATURE, M.BRACKETS]
    assert v.applicable_methods(7.5, 4.2) == [M.GENERAL_SERIES, M.QUADRATURE, M.BRACKETS]
    assert M.LOW_T_ASYMPTOTIC in v.applicable_methods(9, 6, include_approximations=True)
    assert M.LOW_T_ASYMPTOTIC not in v.applicable_methods(10, 4, include_approximations=True)
    with pytest.raises(DomainError):
        v.evaluate(M.NINE_SIX, LJ, 1.0)


@pytest.mark.parametrize("nm", list(B_GRID))
def test_evaluate_dispatch_agrees(nm):
    p = MiePotential(*nm)
    for t in (0.5, 5.0):
        vals = [v.evaluate(mt, p, t).b_over_sigma3 for mt in v.applicable_methods(*nm)]
        assert max(vals) - min(vals) <= 1e-10 * abs(B_GRID[nm][t])


@pytest.mark.parametrize("nm", sorted(BOYLE))
def test_boyle_reference(nm):
    s = v.boyle_search(MiePotential(*nm))
    assert rel(s.root, BOYLE[nm]) < 1e-11
    lo, hi = s.bracket
    assert lo <= s.root <= hi
    assert s.history and s.history[0][0] < s.history[0][1]


def test_boyle_by_other_methods():
    a = v.boyle_temperature(MiePotential(9, 6), method=M.NINE_SIX)
    b = v.boyle_temperature(MiePotential(9, 6), method=M.QUADRATURE)
    assert rel(a, BOYLE[(9.0, 6.0)]) < 1e-10
    assert rel(b, BOYLE[(9.0, 6.0)]) < 1e-8


def test_boyle_not_found():
    with pytest.raises(BracketNotFoundError):
        v.boyle_search(LJ, b_func=lambda t: 1.0 + t)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=4.0, max_value=20.0), st.floats(min_value=0.3, max_value=3.0),
       st.floats(min_value=0.3, max_value=30.0))
def test_series_is_monotone_below_maximum(m, gap, t):
    # B rises with T* in the cold branch: check B(T*) < B(1.1 T*) wherever B < 0
    p = MiePotential(m + gap, m)
    b0 = v.b_general_series(p, t).b_over_sigma3
    b1 = v.b_general_series(p, 1.1 * t).b_over_sigma3
    if b0 < 0:
        assert b1 > b0


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=3.5, max_value=12.0), st.floats(min_value=0.3, max_value=3.0),
       st.floats(min_value=0.5, max_value=20.0))
def test_series_matches_quadrature_random(m, gap, t):
    p = MiePotential(m + gap, m)
    a = v.b_general_series(p, t).b_over_sigma3
    b = v.b_quadrature(p, t).b_over_sigma3
    assert abs(a - b) <= 1e-9 * max(abs(a), 1e-3)
