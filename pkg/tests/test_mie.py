import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mievirial.errors import DomainError
from mievirial.mie import (MiePotential, ReducedTemperature, as_t_star, kT_over_eps, mie_prefactor,
                           potential_energy, reduced_temperature)


@pytest.mark.parametrize("n,m,a", [(12, 6, 4.0), (9, 6, 6.75), (8, 4, 4.0), (14, 7, 2 * 2 ** (1 / 7) * 2 ** (6 / 7))])
def test_prefactor_values(n, m, a):
    assert mie_prefactor(n, m) == pytest.approx(a, rel=1e-15)


@pytest.mark.parametrize("n,m", [(6, 6), (5, 6), (4, 3), (12, 3), (float("inf"), 6), (12, float("nan"))])
def test_exponent_domain(n, m):
    with pytest.raises(DomainError):
        MiePotential(n, m)


@pytest.mark.parametrize("kwargs", [{"sigma": 0.0}, {"sigma": -1.0}, {"epsilon_depth": 0.0}])
def test_scale_domain(kwargs):
    with pytest.raises(DomainError):
        MiePotential(12, 6, **kwargs)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=3.2, max_value=30), st.floats(min_value=0.05, max_value=20))
def test_well_depth_is_minus_one(m, gap):
    p = MiePotential(m + gap, m, sigma=1.7)
    assert potential_energy(p, p.r_min) == pytest.approx(-1.0, rel=1e-12)
    assert abs(potential_energy(p, p.sigma)) < 1e-12


def test_reduced_temperature_roundtrip():
    p = MiePotential(9, 6)
    t = reduced_temperature(p, 27 / 4)
    assert t.t_star == pytest.approx(1.0, rel=1e-15)
    assert kT_over_eps(p, t) == pytest.approx(27 / 4)
    assert reduced_temperature(MiePotential(12, 6), 4.0).t_star == 1.0


@pytest.mark.parametrize("bad", [0.0, -1.0, float("inf"), float("nan")])
def test_reduced_temperature_domain(bad):
    with pytest.raises(DomainError):
        ReducedTemperature(bad)
    with pytest.raises(DomainError):
        as_t_star(bad)


def test_potential_rejects_nonpositive_separation():
    with pytest.raises(DomainError):
        potential_energy(MiePotential(12, 6), 0.0)


def test_as_t_star_accepts_both_forms():
    assert as_t_star(ReducedTemperature(2.5)) == 2.5
    assert as_t_star(2.5) == 2.5
    assert float(ReducedTemperature(3)) == 3.0
    assert math.isclose(MiePotential(12, 6).r_min, 2 ** (1 / 6))
