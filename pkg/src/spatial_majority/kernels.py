"""Kernel backend selection.

The compiled extension is used when it was built; setting
``SPATIAL_MAJORITY_PURE=1`` forces the numpy fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("SPATIAL_MAJORITY_PURE"):
        raise ImportError
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"


def _table(U) -> np.ndarray:
    return np.ascontiguousarray(U, dtype=np.float64)


def preference_counts(U, backend=None) -> np.ndarray:
    impl = _pick(backend)
    return np.asarray(impl.preference_counts(_table(U)))


def counts_against(ux, U, backend=None) -> np.ndarray:
    impl = _pick(backend)
    return np.asarray(impl.counts_against(_table(ux), _table(U)))


def first_dominators(U, threshold: int, first: int = -1, backend=None) -> np.ndarray:
    impl = _pick(backend)
    return np.asarray(impl.first_dominators(_table(U), int(threshold), int(first)))


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _pykernels
    if backend == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names
