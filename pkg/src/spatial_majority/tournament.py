"""Majority tournaments over a finite set of alternatives.

``x`` covers ``y`` (Gillies) when ``x`` beats ``y`` and everything that
beats ``x`` also beats ``y``.  The uncovered set is what nothing covers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .model import InstanceError, VotingSituation


@dataclass(frozen=True, eq=False)
class TournamentMatrix:
    alternatives: np.ndarray  # (m, k)
    pref: np.ndarray  # (m, m) int: voters strictly preferring row to column
    voters: int

    def __post_init__(self):
        for a in (self.alternatives, self.pref):
            a.setflags(write=False)

    @property
    def size(self) -> int:
        return int(self.pref.shape[0])

    @property
    def beats(self) -> np.ndarray:
        """Boolean strict majority relation ``beats[a, b]``."""
        return 2 * self.pref > self.voters

    def to_dict(self) -> dict:
        return {
            "voters": self.voters,
            "alternatives": self.alternatives.tolist(),
            "pref": self.pref.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "TournamentMatrix":
        return cls(np.asarray(d["alternatives"], dtype=float),
                   np.asarray(d["pref"], dtype=np.int32), int(d["voters"]))

    @classmethod
    def from_relation(cls, beats, voters: int = 1) -> "TournamentMatrix":
        """Matrix for an abstract strict relation (one voter per winning edge)."""
        b = np.asarray(beats, dtype=bool)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("relation must be square")
        if np.any(np.diag(b)) or np.any(b & b.T):
            raise ValueError("relation must be irreflexive and asymmetric")
        m = b.shape[0]
        return cls(np.arange(m, dtype=float)[:, None], b.astype(np.int32) * voters, voters)


def build_tournament(situation: VotingSituation, alternatives, backend: str | None = None) -> TournamentMatrix:
    pts = np.atleast_2d(np.asarray(alternatives, dtype=float))
    if pts.shape[1] != situation.dimension:
        raise InstanceError("alternative dimension does not match the space")
    for i, p in enumerate(pts):
        situation.check_point(p, f"alternative {i}")
    if len(pts) > 1:
        gaps = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        gaps[np.diag_indices(len(pts))] = np.inf
        if np.any(gaps <= situation.eps_point):
            a, b = np.argwhere(gaps <= situation.eps_point)[0]
            raise InstanceError(f"duplicate alternatives {int(a)} and {int(b)}")
    pref = kernels.preference_counts(situation.utilities(pts), backend=backend)
    return TournamentMatrix(pts.copy(), pref.astype(np.int32), situation.size)


def finite_core(t: TournamentMatrix) -> list[int]:
    """Indices of alternatives beaten by none."""
    return [int(i) for i in np.flatnonzero(~t.beats.any(axis=0))]


def finite_condorcet(t: TournamentMatrix) -> int | None:
    b = t.beats
    for a in range(t.size):
        if b[a].sum() == t.size - 1:
            return a
    return None


def covering(t: TournamentMatrix) -> np.ndarray:
    """``cov[x, y]`` iff ``x`` covers ``y``."""
    b = t.beats.astype(np.float64)
    # escapes[x, y] = #{w : w beats x and not y}
    escapes = b.T @ (1.0 - b)
    return t.beats & (escapes == 0)


def gillies_uncovered(t: TournamentMatrix) -> list[int]:
    return [int(i) for i in np.flatnonzero(~covering(t).any(axis=0))]
