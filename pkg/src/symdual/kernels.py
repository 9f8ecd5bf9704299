"""Backend selection for the enumeration and row-reduction kernels.

The compiled extension is used when importable; otherwise (or when
``SYMDUAL_PURE_PYTHON=1``) the numpy fallback is used.  ``BACKEND`` names the
active one.
"""
from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels

_compiled: ModuleType | None
try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and os.environ.get("SYMDUAL_PURE_PYTHON") != "1":
    _impl: ModuleType = _compiled
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def multiple_table(R: np.ndarray, p: int) -> np.ndarray:
    """``table[i, m, c] = m * R[i, c] mod p`` as contiguous uint16."""
    R = np.asarray(R, dtype=np.int64)
    m = np.arange(p, dtype=np.int64)
    return np.ascontiguousarray((m[None, :, None] * R[:, None, :]) % p, dtype=np.uint16)


def enum_level(table, w, lead_lo, lead_hi, best, best_msg, hist=None, backend=None):
    return get_backend(backend).enum_level(table, w, lead_lo, lead_hi, best, best_msg, hist)


def gray_min_weight(gen, p, best_msg, backend=None):
    gen = np.ascontiguousarray(gen, dtype=np.uint16)
    return get_backend(backend).gray_min_weight(gen, p, best_msg)


def rref_inplace(g, order, p, inv_table, pivots, backend=None):
    return get_backend(backend).rref_inplace(g, order, p, inv_table, pivots)
