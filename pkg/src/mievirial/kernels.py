"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` twin is used. Setting ``MIEVIRIAL_PURE_PYTHON=1``
forces the fallback.
"""

import importlib
import os

_NAMES = {"cython": "mievirial._ckernels", "python": "mievirial._pykernels"}


def load_backend(name):
    """Import a specific backend module by short name ('cython' or 'python')."""
    return importlib.import_module(_NAMES[name])


def available_backends():
    found = []
    for name in _NAMES:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _select():
    if os.environ.get("MIEVIRIAL_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()

mie_series_sum = _impl.mie_series_sum
pfq_sum = _impl.pfq_sum
pfq_sum_dd = _impl.pfq_sum_dd
mie_integrand = _impl.mie_integrand
gk15_mie = _impl.gk15_mie
