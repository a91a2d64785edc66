"""Selects the lattice-sum kernel: compiled extension when importable, else Python.

Set ``CARLITZQ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _lattice_py

_C_LIMIT = 1 << 63

try:
    if os.environ.get("CARLITZQ_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from ._lattice import lattice_sum as _compiled_sum
except ImportError:
    _compiled_sum = None

HAVE_EXTENSION = _compiled_sum is not None


def backend_name() -> str:
    return "cython" if HAVE_EXTENSION else "python"


def lattice_sum(lo, hi, modulus, alternate, skip_p, table, g0, g, brackets, *, force_python=False):
    if force_python or _compiled_sum is None or modulus >= _C_LIMIT:
        return _lattice_py.lattice_sum(lo, hi, modulus, alternate, skip_p, table, g0, g, brackets)
    for b in brackets:
        if b[3] >= _C_LIMIT:
            return _lattice_py.lattice_sum(lo, hi, modulus, alternate, skip_p, table, g0, g, brackets)
    return _compiled_sum(lo, hi, modulus, alternate, skip_p, table, g0, g, brackets)
