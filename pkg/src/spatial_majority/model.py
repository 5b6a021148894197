"""Voting situations: policy spaces, quadratic-utility voters and instance I/O.

A voting situation bundles a compact convex policy space, an ordered list of
voters and simple majority rule.  Every voter has a strictly concave quadratic
utility ``u(x) = -(x - ideal)^T M (x - ideal)`` with a symmetric
positive-definite metric ``M``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence, Union

import numpy as np

DEFAULT_TOLERANCE = 1e-8


class InstanceError(ValueError):
    """Raised when an instance violates a model invariant."""


def as_point(x: Any, k: int | None = None) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.ndim != 1:
        raise InstanceError(f"expected a 1-d point, got shape {p.shape}")
    if k is not None and p.shape[0] != k:
        raise InstanceError(f"dimension mismatch: expected {k}, got {p.shape[0]}")
    return p


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


class PolicySpace:
    """Common interface of the compact convex policy spaces."""

    dimension: int

    def contains(self, p, tol: float = 0.0) -> bool:
        raise NotImplementedError

    def is_interior(self, p, tol: float = 0.0) -> bool:
        raise NotImplementedError

    def contains_many(self, pts: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """Vectorised ``contains`` over the rows of ``pts``."""
        raise NotImplementedError

    @property
    def diameter(self) -> float:
        raise NotImplementedError

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned bounding box ``(lower, upper)``."""
        raise NotImplementedError

    def line_range(self, z: np.ndarray, d: np.ndarray) -> tuple[float, float]:
        """Maximal ``[t_min, t_max]`` with ``z + t d`` inside the space."""
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """Uniform sample of ``count`` points, shape ``(count, k)``."""
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Box(PolicySpace):
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lo.ndim != 1 or lo.shape != hi.shape or lo.size == 0:
            raise InstanceError("box bounds must be equal-length non-empty vectors")
        if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
            raise InstanceError("box bounds must be finite")
        if np.any(lo >= hi):
            axis = int(np.argmax(lo >= hi))
            raise InstanceError(f"box axis {axis}: lower must be < upper")
        object.__setattr__(self, "lower", _frozen(lo))
        object.__setattr__(self, "upper", _frozen(hi))

    @classmethod
    def cube(cls, k: int, half_width: float = 1.0) -> "Box":
        if k < 1:
            raise InstanceError("dimension must be >= 1")
        return cls(-half_width * np.ones(k), half_width * np.ones(k))

    @property
    def dimension(self) -> int:
        return int(self.lower.shape[0])

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def contains(self, p, tol: float = 0.0) -> bool:
        p = as_point(p, self.dimension)
        return bool(np.all(p >= self.lower - tol) and np.all(p <= self.upper + tol))

    def is_interior(self, p, tol: float = 0.0) -> bool:
        p = as_point(p, self.dimension)
        return bool(np.all(p > self.lower + tol) and np.all(p < self.upper - tol))

    def contains_many(self, pts, tol: float = 0.0) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return np.all((pts >= self.lower - tol) & (pts <= self.upper + tol), axis=1)

    def bounds(self):
        return self.lower, self.upper

    def line_range(self, z, d):
        t_min, t_max = -math.inf, math.inf
        for a in range(self.dimension):
            if d[a] == 0.0:
                continue
            t1 = (self.lower[a] - z[a]) / d[a]
            t2 = (self.upper[a] - z[a]) / d[a]
            if t1 > t2:
                t1, t2 = t2, t1
            t_min = max(t_min, t1)
            t_max = min(t_max, t2)
        # anchor is inside; rounding must not flip the sign convention
        return min(float(t_min), 0.0), max(float(t_max), 0.0)

    def sample(self, rng, count):
        return rng.uniform(self.lower, self.upper, size=(count, self.dimension))

    def to_dict(self):
        return {"type": "box", "lower": self.lower.tolist(), "upper": self.upper.tolist()}


@dataclass(frozen=True, eq=False)
class Ball(PolicySpace):
    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.center, dtype=float))
        if c.ndim != 1 or c.size == 0 or not np.all(np.isfinite(c)):
            raise InstanceError("ball center must be a finite non-empty vector")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise InstanceError("ball radius must be positive")
        object.__setattr__(self, "center", _frozen(c))
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dimension(self) -> int:
        return int(self.center.shape[0])

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def contains(self, p, tol: float = 0.0) -> bool:
        p = as_point(p, self.dimension)
        return bool(np.linalg.norm(p - self.center) <= self.radius + tol)

    def is_interior(self, p, tol: float = 0.0) -> bool:
        p = as_point(p, self.dimension)
        return bool(np.linalg.norm(p - self.center) < self.radius - tol)

    def contains_many(self, pts, tol: float = 0.0) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return np.linalg.norm(pts - self.center, axis=1) <= self.radius + tol

    def bounds(self):
        return self.center - self.radius, self.center + self.radius

    def line_range(self, z, d):
        # |w + t d|^2 = r^2 with w = z - c and |d| = 1
        w = z - self.center
        b = float(w @ d)
        c = float(w @ w) - self.radius**2
        disc = max(b * b - c, 0.0)
        root = math.sqrt(disc)
        return min(-b - root, 0.0), max(-b + root, 0.0)

    def sample(self, rng, count):
        k = self.dimension
        out = np.empty((count, k))
        filled = 0
        while filled < count:
            cand = rng.uniform(-1.0, 1.0, size=(2 * (count - filled) + 8, k))
            cand = cand[np.einsum("ij,ij->i", cand, cand) <= 1.0]
            take = min(len(cand), count - filled)
            out[filled:filled + take] = cand[:take]
            filled += take
        return self.center + self.radius * out

    def to_dict(self):
        return {"type": "ball", "center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class Voter:
    """A voter with utility ``-(x - ideal)^T metric (x - ideal)``."""

    ideal: np.ndarray
    metric: np.ndarray | None = None

    def __post_init__(self):
        ideal = as_point(self.ideal)
        k = ideal.shape[0]
        if not np.all(np.isfinite(ideal)):
            raise InstanceError("ideal point must be finite")
        metric = np.eye(k) if self.metric is None else np.asarray(self.metric, dtype=float)
        if metric.shape != (k, k):
            raise InstanceError(f"metric must be {k}x{k}, got {metric.shape}")
        if not np.all(np.abs(metric - metric.T) <= 1e-12):
            raise InstanceError("metric is not symmetric")
        try:
            np.linalg.cholesky(metric)
        except np.linalg.LinAlgError:
            raise InstanceError("metric is not positive definite") from None
        object.__setattr__(self, "ideal", _frozen(ideal))
        object.__setattr__(self, "metric", _frozen(metric))

    @property
    def dimension(self) -> int:
        return int(self.ideal.shape[0])

    @property
    def is_euclidean(self) -> bool:
        return bool(np.array_equal(self.metric, np.eye(self.dimension)))

    def to_dict(self) -> dict:
        d: dict = {"ideal": self.ideal.tolist()}
        if not self.is_euclidean:
            d["metric"] = self.metric.tolist()
        return d


@dataclass(frozen=True)
class Coalition:
    """Sorted tuple of distinct voter indices."""

    members: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(i) for i in self.members)
        if any(i < 0 for i in m) or len(set(m)) != len(m) or list(m) != sorted(m):
            raise InstanceError("coalition indices must be sorted, distinct and non-negative")
        object.__setattr__(self, "members", m)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True, eq=False)
class VotingSituation:
    """Policy space plus an ordered voter list under simple majority rule.

    ``tolerance`` is the relative point tolerance; the absolute tolerance used
    for point equality and boundary tests is ``eps_point = tolerance * diameter``.
    """

    space: PolicySpace
    voters: tuple[Voter, ...]
    tolerance: float = DEFAULT_TOLERANCE
    _ideals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        voters = tuple(self.voters)
        object.__setattr__(self, "voters", voters)
        if not voters:
            raise InstanceError("a voting situation needs at least one voter")
        if not self.tolerance > 0:
            raise InstanceError("tolerance must be positive")
        k = self.space.dimension
        for i, v in enumerate(voters):
            if v.dimension != k:
                raise InstanceError(f"voter {i}: dimension {v.dimension} != space dimension {k}")
            if not self.space.contains(v.ideal, self.eps_point):
                raise InstanceError(f"voter {i}: ideal point lies outside the policy space")
        object.__setattr__(self, "_ideals", _frozen(np.array([v.ideal for v in voters])))

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def size(self) -> int:
        return len(self.voters)

    def __len__(self):
        return len(self.voters)

    @property
    def is_even(self) -> bool:
        return self.size % 2 == 0

    @property
    def half(self) -> int:
        """``floor(|N| / 2)``."""
        return self.size // 2

    @property
    def majority(self) -> int:
        """Least integer strictly greater than ``|N| / 2``."""
        return self.size // 2 + 1

    @property
    def eps_point(self) -> float:
        return self.tolerance * self.space.diameter

    @property
    def ideals(self) -> np.ndarray:
        return self._ideals

    def check_point(self, x, name: str = "point") -> np.ndarray:
        p = as_point(x, self.dimension)
        if not self.space.contains(p, self.eps_point):
            raise InstanceError(f"{name} {p.tolist()} lies outside the policy space")
        return p

    def is_interior(self, x) -> bool:
        return self.space.is_interior(as_point(x, self.dimension), self.eps_point)

    def ideals_near(self, z) -> list[int]:
        """Indices of voters whose ideal lies within ``eps_point`` of ``z``."""
        z = as_point(z, self.dimension)
        dist = np.linalg.norm(self.ideals - z, axis=1)
        return [int(i) for i in np.flatnonzero(dist <= self.eps_point)]

    def utilities(self, points) -> np.ndarray:
        """Utility table of shape ``(|N|, m)`` for ``m`` points."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dimension:
            raise InstanceError(f"dimension mismatch: expected {self.dimension}, got {pts.shape[1]}")
        return np.stack([_utility_rows(v, pts) for v in self.voters])

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "space": self.space.to_dict(),
            "voters": [v.to_dict() for v in self.voters],
        }


def _utility_rows(voter: Voter, pts: np.ndarray) -> np.ndarray:
    # Elementwise accumulation only (no BLAS) so a point's utility does not
    # depend on how many other points are evaluated alongside it.
    diff = pts - voter.ideal
    k = diff.shape[1]
    out = np.zeros(diff.shape[0])
    if voter.is_euclidean:
        for a in range(k):
            out -= diff[:, a] * diff[:, a]
        return out
    m = voter.metric
    for a in range(k):
        row = np.zeros(diff.shape[0])
        for b in range(k):
            row += m[a, b] * diff[:, b]
        out -= diff[:, a] * row
    return out


def evaluate_utility(voter: Voter, x) -> float:
    """Utility of ``voter`` at ``x``; zero exactly at the ideal point."""
    p = as_point(x, voter.dimension)
    return float(_utility_rows(voter, p[None, :])[0])


def gradient(voter: Voter, x) -> np.ndarray:
    p = as_point(x, voter.dimension)
    return -2.0 * voter.metric @ (p - voter.ideal)


def in_upper_contour(voter: Voter, base, candidate) -> bool:
    """True iff ``candidate`` is weakly preferred to ``base``."""
    return evaluate_utility(voter, candidate) >= evaluate_utility(voter, base)


# ---------------------------------------------------------------------------
# instance files

def space_from_dict(d: dict, k: int | None = None) -> PolicySpace:
    kind = d.get("type")
    if kind == "box":
        space: PolicySpace = Box(d["lower"], d["upper"])
    elif kind == "ball":
        space = Ball(d["center"], d["radius"])
    else:
        raise InstanceError(f"unknown space type {kind!r}")
    if k is not None and space.dimension != k:
        raise InstanceError(f"space dimension {space.dimension} != declared dimension {k}")
    return space


def situation_from_dict(d: dict, tolerance: float = DEFAULT_TOLERANCE) -> VotingSituation:
    try:
        k = int(d["dimension"])
        if k < 1:
            raise InstanceError("dimension must be >= 1")
        space = space_from_dict(d["space"], k)
        raw = d["voters"]
    except KeyError as exc:
        raise InstanceError(f"missing field {exc.args[0]!r}") from None
    voters = []
    for i, v in enumerate(raw):
        try:
            voters.append(Voter(v["ideal"], v.get("metric")))
        except KeyError:
            raise InstanceError(f"voter {i}: missing field 'ideal'") from None
        except (InstanceError, ValueError, TypeError) as exc:
            raise InstanceError(f"voter {i}: {exc}") from None
    return VotingSituation(space, tuple(voters), tolerance)


PathLike = Union[str, Path]


def load_instance(path: PathLike, tolerance: float = DEFAULT_TOLERANCE) -> VotingSituation:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: invalid JSON ({exc})") from None
    return situation_from_dict(data, tolerance)


def dump_instance(situation: VotingSituation) -> str:
    return json.dumps(situation.to_dict(), indent=2, sort_keys=True) + "\n"


def save_instance(situation: VotingSituation, path: PathLike) -> None:
    Path(path).write_text(dump_instance(situation), encoding="utf-8")


def make_situation(ideals: Sequence, space: PolicySpace | None = None, metrics=None,
                   tolerance: float = DEFAULT_TOLERANCE) -> VotingSituation:
    """Convenience constructor; default space is the cube ``[-1, 1]^k``."""
    ideals = [as_point(p) for p in ideals]
    if space is None:
        space = Box.cube(len(ideals[0]))
    if metrics is None:
        metrics = [None] * len(ideals)
    return VotingSituation(space, tuple(Voter(p, m) for p, m in zip(ideals, metrics)), tolerance)
