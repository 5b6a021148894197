"""Induced ideal points on lines and the paired-ideals construction.

On a line through an interior point ``z`` every quadratic voter is
single-peaked.  If ``z`` is undominated and at most one voter's induced ideal
sits at ``z``, the induced ideals split evenly between the two half-lines,
and the midpoint between ``z`` and the innermost ideal on a half-line holding
at least ``|N|/2`` of them is a policy that ``z`` fails to beat.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ClippedLine
from .model import InstanceError, Voter, VotingSituation, as_point


@dataclass(frozen=True, eq=False)
class InducedIdeal:
    voter: int
    t: float
    point: np.ndarray
    at_anchor: bool


@dataclass(frozen=True, eq=False)
class Lemma1Report:
    """Classification of all induced ideals on one line through the anchor."""

    line: ClippedLine
    ideals: tuple[InducedIdeal, ...]
    count_at_anchor: int
    plus_count: int
    minus_count: int
    witness: np.ndarray | None = None

    @property
    def parameters(self) -> np.ndarray:
        return np.array([ii.t for ii in self.ideals])

    def to_dict(self) -> dict:
        return {
            "line": self.line.to_dict(),
            "induced_parameters": [ii.t for ii in self.ideals],
            "count_at_anchor": self.count_at_anchor,
            "plus_count": self.plus_count,
            "minus_count": self.minus_count,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def _peak_parameter(voter: Voter, line: ClippedLine) -> float:
    d = line.direction
    md = voter.metric @ d
    t = float(md @ (voter.ideal - line.anchor)) / float(md @ d)
    return min(max(t, line.t_min), line.t_max)


def induced_ideal(voter: Voter, line: ClippedLine, eps_param: float = 0.0,
                  index: int = -1) -> InducedIdeal:
    """Unique maximiser of the voter's utility on the clipped segment."""
    if voter.dimension != line.anchor.shape[0]:
        raise InstanceError("dimension mismatch between voter and line")
    t = _peak_parameter(voter, line)
    return InducedIdeal(index, t, line.point(t), abs(t) <= eps_param)


def count_ideals_at_anchor(situation: VotingSituation, line: ClippedLine) -> Lemma1Report:
    if not situation.is_interior(line.anchor):
        raise InstanceError("line anchor must lie in the interior of the policy space")
    eps = situation.eps_point
    ideals = tuple(induced_ideal(v, line, eps, i) for i, v in enumerate(situation.voters))
    at = sum(ii.at_anchor for ii in ideals)
    plus = sum(1 for ii in ideals if ii.t > eps)
    minus = sum(1 for ii in ideals if ii.t < -eps)
    return Lemma1Report(line, ideals, at, plus, minus)


def lemma1_witness(situation: VotingSituation, z, line: ClippedLine,
                   report: Lemma1Report | None = None) -> np.ndarray | None:
    """A point on ``line`` that ``z`` does not beat, or ``None``.

    Returns ``None`` when two or more induced ideals sit at the anchor.  The
    plus side wins ties between qualifying half-lines.
    """
    if not situation.is_even:
        raise InstanceError("parity: the paired-ideals construction needs an even number of voters")
    z = as_point(z, situation.dimension)
    if not np.allclose(z, line.anchor, rtol=0.0, atol=situation.eps_point):
        raise InstanceError("z must be the anchor of the line")
    if report is None:
        report = count_ideals_at_anchor(situation, line)
    if report.count_at_anchor >= 2:
        return None
    n = situation.half
    eps = situation.eps_point
    ts = report.parameters
    if report.plus_count >= n and report.plus_count > 0:
        t = float(ts[ts > eps].min())
    elif report.minus_count >= n and report.minus_count > 0:
        t = float(ts[ts < -eps].max())
    else:  # pragma: no cover - impossible when count_at_anchor <= 1
        return None
    return line.point(t / 2.0)


def analyze_line(situation: VotingSituation, line: ClippedLine) -> Lemma1Report:
    """Counts plus the witness (if any) in a single report."""
    report = count_ideals_at_anchor(situation, line)
    if not situation.is_even or report.count_at_anchor >= 2:
        return report
    w = lemma1_witness(situation, line.anchor, line, report)
    return Lemma1Report(line, report.ideals, report.count_at_anchor,
                        report.plus_count, report.minus_count, w)
