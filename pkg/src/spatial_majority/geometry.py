"""Lines through a point, clipped to the policy space."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .model import InstanceError, PolicySpace, as_point


@dataclass(frozen=True, eq=False)
class ClippedLine:
    """``point(t) = anchor + t * direction`` for ``t`` in ``[t_min, t_max]``.

    The anchor sits at ``t = 0`` so the two half-lines are sign ranges.
    """

    anchor: np.ndarray
    direction: np.ndarray
    t_min: float
    t_max: float

    def point(self, t: float) -> np.ndarray:
        return self.anchor + float(t) * self.direction

    def points(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        return self.anchor[None, :] + ts[:, None] * self.direction[None, :]

    @property
    def length(self) -> float:
        return self.t_max - self.t_min

    def to_dict(self) -> dict:
        return {
            "anchor": self.anchor.tolist(),
            "direction": self.direction.tolist(),
            "t_min": self.t_min,
            "t_max": self.t_max,
        }


@dataclass(frozen=True)
class HalfLinePair:
    """Closed parameter ranges of the two half-lines meeting at ``t = 0``."""

    plus: tuple[float, float]
    minus: tuple[float, float]

    @property
    def split(self) -> float:
        return 0.0


def clip_line(space: PolicySpace, z, direction, tol: float = 0.0) -> ClippedLine:
    z = as_point(z, space.dimension)
    d = as_point(direction, space.dimension)
    norm = float(np.linalg.norm(d))
    if norm == 0.0 or not math.isfinite(norm):
        raise InstanceError("line direction must be a non-zero finite vector")
    if not space.contains(z, tol):
        raise InstanceError(f"anchor {z.tolist()} lies outside the policy space")
    d = d / norm
    t_min, t_max = space.line_range(z, d)
    anchor = z.copy()
    anchor.setflags(write=False)
    d.setflags(write=False)
    return ClippedLine(anchor, d, t_min, t_max)


def split_half_lines(line: ClippedLine) -> HalfLinePair:
    return HalfLinePair(plus=(0.0, line.t_max), minus=(line.t_min, 0.0))


def distance(a, b) -> float:
    a = as_point(a)
    b = as_point(b, a.shape[0])
    return float(np.linalg.norm(a - b))


def canonicalize(v: np.ndarray) -> np.ndarray:
    """Flip ``v`` so its first non-zero coordinate is positive."""
    nz = np.flatnonzero(v)
    if nz.size and v[nz[0]] < 0:
        return -v
    return v


def generate_directions(k: int, count: int, seed: int = 0, jitter: float = 0.5) -> np.ndarray:
    """Deterministic unit directions, one per line through a point.

    For ``k == 2`` the angles are ``(j + jitter * U_j) * pi / count`` with
    ``U_j`` uniform on ``[0, 1)`` drawn from ``seed``; ``jitter < 1`` keeps the
    angles strictly increasing inside ``[0, pi)``.  For ``k >= 3`` the
    directions are normalised Gaussian draws.  Every direction is in
    half-sphere canonical form.  Returns an array of shape ``(count, k)``.
    """
    return _directions(int(k), int(count), int(seed), float(jitter)).copy()


@functools.lru_cache(maxsize=64)
def _directions(k: int, count: int, seed: int, jitter: float) -> np.ndarray:
    if count < 1:
        raise ValueError("count must be >= 1")
    if k < 1:
        raise ValueError("dimension must be >= 1")
    if not 0.0 <= jitter < 1.0:
        raise ValueError("jitter must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    if k == 1:
        if count > 1:
            raise ValueError("a line has only one direction")
        return np.ones((1, 1))
    if k == 2:
        u = rng.random(count) if jitter > 0 else np.zeros(count)
        theta = (np.arange(count) + jitter * u) * math.pi / count
        return _canonical_rows(np.column_stack([np.cos(theta), np.sin(theta)]))
    out = np.empty((0, k))
    while len(out) < count:
        g = rng.standard_normal((count - len(out), k))
        g = g[np.linalg.norm(g, axis=1) > 1e-12]
        g /= np.linalg.norm(g, axis=1)[:, None]
        out = _drop_parallel(np.vstack([out, _canonical_rows(g)]))
    return out


def _canonical_rows(v: np.ndarray) -> np.ndarray:
    first = v[np.arange(len(v)), np.argmax(v != 0.0, axis=1)]
    return np.where(first[:, None] < 0, -v, v)


def _drop_parallel(v: np.ndarray) -> np.ndarray:
    # keep the earliest of any (numerically) parallel group; vanishingly rare
    gram = np.abs(v @ v.T)
    np.fill_diagonal(gram, 0.0)
    clash = np.triu(gram > 1.0 - 1e-10)
    return v[~clash.any(axis=0)]
