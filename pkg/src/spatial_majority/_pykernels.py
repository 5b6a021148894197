"""Numpy implementations of the preference-counting kernels."""

from __future__ import annotations

import numpy as np

_CHUNK_CELLS = 4_000_000


def preference_counts(U: np.ndarray) -> np.ndarray:
    """``P[a, b] = #{i : U[i, a] > U[i, b]}``."""
    n, m = U.shape
    out = np.zeros((m, m), dtype=np.int32)
    step = max(1, _CHUNK_CELLS // max(1, n * m))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        out[lo:hi] = (U[:, lo:hi, None] > U[:, None, :]).sum(axis=0)
    return out


def counts_against(ux: np.ndarray, U: np.ndarray) -> np.ndarray:
    return (ux[:, None] > U).sum(axis=0).astype(np.int32)


def first_dominators(U: np.ndarray, threshold: int, first: int) -> np.ndarray:
    """Per column ``b``, some ``a`` beating ``b`` by ``threshold`` voters, else -1.

    Tries ``first`` before the others; otherwise returns the smallest index.
    """
    n, m = U.shape
    out = np.full(m, -1, dtype=np.int64)
    todo = np.arange(m)
    if first >= 0:
        hit = counts_against(U[:, first], U) >= threshold
        hit[first] = False
        out[hit] = first
        todo = np.flatnonzero(~hit)
    step = max(1, _CHUNK_CELLS // max(1, n * m))
    for lo in range(0, len(todo), step):
        cols = todo[lo:lo + step]
        beats = (U[:, :, None] > U[:, None, cols]).sum(axis=0) >= threshold  # (m, c)
        if first >= 0:
            beats[first] = False
        beats[cols, np.arange(len(cols))] = False
        found = beats.any(axis=0)
        out[cols[found]] = beats[:, found].argmax(axis=0)
    return out
