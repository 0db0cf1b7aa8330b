"""Backend selection for the finite-field and ordering kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy fallback.  Set ``ZIGZAG_MDS_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import functools
import os

import numpy as np

from . import _pykernels
from .field import FieldSpec

try:
    if os.environ.get("ZIGZAG_MDS_PURE") == "1":
        raise ImportError("pure backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

BACKEND = "cython" if _ckernels is not None else "python"
_impl = BACKENDS[BACKEND]


def get_backend(name: str | None = None):
    """Kernel module by name; the active one when ``name`` is None."""
    if name is None:
        return _impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None


@functools.lru_cache(maxsize=None)
def tables(f: FieldSpec):
    return (
        np.ascontiguousarray(f.exp, dtype=np.int32),
        np.ascontiguousarray(f.log, dtype=np.int32),
    )


def rank(mat, f: FieldSpec, backend=None) -> int:
    return get_backend(backend).rank(mat, *tables(f))


def det(mat, f: FieldSpec, backend=None) -> int:
    return int(get_backend(backend).det(mat, *tables(f)))


def inverse(mat, f: FieldSpec, backend=None):
    return get_backend(backend).inverse(mat, *tables(f))


def matmul(a, b, f: FieldSpec, backend=None):
    return get_backend(backend).matmul(a, b, *tables(f))


def membership_table(m: int, checks) -> np.ndarray:
    g = np.arange(1 << m)
    rows = []
    for a in checks:
        x = g & a
        par = np.zeros_like(x)
        while x.any():
            par ^= x & 1
            x >>= 1
        rows.append(par == 0)
    return np.array(rows, dtype=np.uint8).reshape(len(rows), 1 << m)


def coset_costs(perms, m: int, checks, backend=None) -> np.ndarray:
    return get_backend(backend).coset_costs(
        np.ascontiguousarray(perms, dtype=np.int32), membership_table(m, checks)
    )
