import math

import pytest

from mievirial import kernels

BACKENDS = kernels.available_backends()
PY = kernels.load_backend("python")


def test_python_fallback_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("degree", range(0, 23))
def test_kronrod_rule_is_exact_to_degree_22(degree):
    nodes = list(PY.XGK) + [-x for x in PY.XGK[:-1]]
    weights = list(PY.WGK) + list(PY.WGK[:-1])
    got = math.fsum(w * x ** degree for x, w in zip(nodes, weights))
    exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
    assert got == pytest.approx(exact, abs=2e-15)


@pytest.mark.parametrize("degree", range(0, 14))
def test_embedded_gauss_rule_is_exact_to_degree_13(degree):
    gx = list(PY.XGK[1::2])
    nodes = gx + [-x for x in gx if x != 0.0]
    weights = list(PY.WG) + [w for x, w in zip(gx, PY.WG) if x != 0.0]
    got = math.fsum(w * x ** degree for x, w in zip(nodes, weights))
    exact = 0.0 if degree % 2 else 2.0 / (degree + 1)
    assert got == pytest.approx(exact, abs=2e-15)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
class TestBackendsAgree:
    cy = kernels.load_backend("cython") if "cython" in BACKENDS else None

    @pytest.mark.parametrize("n,m,t", [(12, 6, 1.0), (7.5, 4.2, 0.05), (10, 4, 50.0), (9, 6, 1e-2)])
    def test_series(self, n, m, t):
        a = PY.mie_series_sum(n, m, t, 1e-12, 10000, 0)
        b = self.cy.mie_series_sum(n, m, t, 1e-12, 10000, 0)
        assert (a[1], a[3]) == (b[1], b[3])
        assert a[0] == pytest.approx(b[0], rel=1e-14)

    @pytest.mark.parametrize("up,lo,z", [((0.5,), (1.5,), 3.0), ((0.25, 0.75), (0.6, 0.8, 1.2, 1.4), 0.2),
                                         ((-0.25,), (0.5,), -12.0)])
    def test_pfq(self, up, lo, z):
        for name in ("pfq_sum", "pfq_sum_dd"):
            a = getattr(PY, name)(up, lo, z, 1e-15, 10000)
            b = getattr(self.cy, name)(up, lo, z, 1e-15, 10000)
            assert a[1] == b[1]
            assert a[0] == pytest.approx(b[0], rel=1e-14)

    @pytest.mark.parametrize("piece", [0, 1])
    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (0.25, 0.5), (0.9, 1.0)])
    def test_gk15_panel(self, piece, a, b):
        p = PY.gk15_mie(a, b, 12.0, 6.0, 1.3, piece)
        c = self.cy.gk15_mie(a, b, 12.0, 6.0, 1.3, piece)
        assert p[0] == pytest.approx(c[0], rel=1e-13, abs=1e-300)
        assert p[1] == pytest.approx(c[1], rel=1e-10, abs=1e-300)

    @pytest.mark.parametrize("x", [1e-3, 0.2, 0.7, 1.0])
    def test_integrand(self, x):
        for piece in (0, 1):
            assert PY.mie_integrand(x, 9.0, 6.0, 2.0, piece) == pytest.approx(
                self.cy.mie_integrand(x, 9.0, 6.0, 2.0, piece), rel=1e-14, abs=1e-300)


def test_forced_fallback(monkeypatch):
    import importlib
    monkeypatch.setenv("MIEVIRIAL_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("MIEVIRIAL_PURE_PYTHON")
        importlib.reload(kernels)
