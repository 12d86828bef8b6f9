"""Backend selection for the enumeration kernels.

The compiled module is used when it imports; set ``PHILATTICE_PURE_PYTHON=1``
to force the pure-Python walker.  Both expose the same three functions.
"""

import os

from . import _enum_py

try:
    if os.environ.get("PHILATTICE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _enum_c
except ImportError:
    _enum_c = None

OK = _enum_py.OK
BUDGET = _enum_py.BUDGET
STOPPED = _enum_py.STOPPED

_BACKENDS = {"python": _enum_py}
if _enum_c is not None:
    _BACKENDS["cython"] = _enum_c

_active = _enum_c if _enum_c is not None else _enum_py


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_backend() -> str:
    return "cython" if _active is _enum_c and _enum_c is not None else "python"


def set_backend(name: str) -> str:
    """Switch backends; returns the previous backend name."""
    global _active
    previous = get_backend()
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}") from None
    return previous


def gauss_sum_kernel(R, y, radius2, alpha, skip_zero, stop_above, budget):
    return _active.gauss_sum_kernel(R, y, radius2, alpha, skip_zero, stop_above, budget)


def points_kernel(R, y, radius2, budget, max_points):
    return _active.points_kernel(R, y, radius2, budget, max_points)


def shortest_kernel(R, radius2, budget):
    return _active.shortest_kernel(R, radius2, budget)
