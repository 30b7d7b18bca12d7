"""Kernel backend selection.

The compiled module is used when it imports; set ``PINCHWPC_PURE_PYTHON=1``
to force the numpy fallback.  ``BACKEND`` names the active one.
"""
import importlib
import os

from . import _pykernels

_FORCE_PURE = os.environ.get("PINCHWPC_PURE_PYTHON", "").lower() in ("1", "true", "yes")

try:
    if _FORCE_PURE:
        raise ImportError("pure-Python backend requested")
    from . import _ckernels as _active
    BACKEND = "cython"
except ImportError:
    _active = _pykernels
    BACKEND = "python"


def get_backend(name=None):
    """Return the kernel module for ``name`` ('cython' or 'python'), default active."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module(__name__ + "._ckernels")
    raise ValueError(f"unknown backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        get_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


counter_uniforms = _active.counter_uniforms
mc_rates = _active.mc_rates
quad_outage_count = _active.quad_outage_count
quad_rate_rows = _active.quad_rate_rows
dilog = _active.dilog
compensated_sum = _active.compensated_sum
