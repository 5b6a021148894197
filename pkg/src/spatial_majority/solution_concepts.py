"""Majority dominance, core membership and Condorcet-winner testing.

Core membership of an interior point ``z`` is decided by a directional count:
``z`` is undominated iff no unit direction ``v`` gives a strict majority of
voters a strictly positive directional derivative ``grad u_i(z) . v``.
Moving a little along such a ``v`` produces a dominating point; conversely,
concavity gives ``grad u_i(z) . (y - z) >= u_i(y) - u_i(z) > 0`` for every
member of a coalition by which ``y`` dominates ``z``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .geometry import ClippedLine, clip_line, generate_directions
from .line_analysis import Lemma1Report, analyze_line
from .model import Coalition, InstanceError, VotingSituation, as_point


class CondorcetStatus(str, Enum):
    CERTIFIED_WINNER = "CertifiedWinner"
    CERTIFIED_NOT_WINNER = "CertifiedNotWinner"
    NOT_FALSIFIED = "NotFalsified"


@dataclass(frozen=True)
class Budget:
    lines: int = 64
    challenges: int = 10_000


@dataclass(frozen=True, eq=False)
class DominanceVerdict:
    dominates: bool
    prefer_x_count: int
    prefer_y_count: int
    indifferent_count: int
    coalition: Coalition | None = None

    def to_dict(self) -> dict:
        return {
            "dominates": self.dominates,
            "prefer_x": self.prefer_x_count,
            "prefer_y": self.prefer_y_count,
            "indifferent": self.indifferent_count,
            "coalition": None if self.coalition is None else list(self.coalition),
        }


@dataclass(frozen=True, eq=False)
class CoreVerdict:
    """``exact`` is False when the direction check was sampled (``k >= 3``);
    a positive verdict is then only "not falsified"."""

    in_core: bool
    violating_direction: np.ndarray | None = None
    positive_count: int | None = None
    exact: bool = True
    directions_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "in_core": self.in_core,
            "violating_direction": _list(self.violating_direction),
            "positive_count": self.positive_count,
            "exact": self.exact,
            "directions_checked": self.directions_checked,
        }


@dataclass(frozen=True, eq=False)
class CondorcetVerdict:
    status: CondorcetStatus
    witness: np.ndarray | None = None
    certificate: str | None = None
    lines_used: int = 0
    challenges_used: int = 0
    line: ClippedLine | None = None
    counts: DominanceVerdict | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": _list(self.witness),
            "certificate": self.certificate,
            "budget_used": {"lines": self.lines_used, "challenges": self.challenges_used},
            "line": None if self.line is None else self.line.to_dict(),
            "counts": None if self.counts is None else self.counts.to_dict(),
        }


def _list(a):
    return None if a is None else np.asarray(a).tolist()


# ---------------------------------------------------------------------------
# dominance

def dominates(situation: VotingSituation, x, y) -> DominanceVerdict:
    """Does ``x`` beat ``y`` by a strict majority of strict preferences?"""
    x = situation.check_point(x, "x")
    y = situation.check_point(y, "y")
    u = situation.utilities(np.stack([x, y]))
    px = u[:, 0] > u[:, 1]
    py = u[:, 1] > u[:, 0]
    nx, ny = int(px.sum()), int(py.sum())
    wins = nx > situation.size / 2
    coalition = Coalition(tuple(int(i) for i in np.flatnonzero(px))) if wins else None
    return DominanceVerdict(wins, nx, ny, situation.size - nx - ny, coalition)


def gradients_at(situation: VotingSituation, z) -> np.ndarray:
    """Rows are the voters' utility gradients at ``z``."""
    z = as_point(z, situation.dimension)
    return np.stack([-2.0 * v.metric @ (z - v.ideal) for v in situation.voters])


# ---------------------------------------------------------------------------
# core membership

def _sweep_2d(grads: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Best direction and its positive count, exact over all angles.

    The count of ``g_i . v > 0`` is constant on the open sectors cut by the
    perpendiculars of the non-zero gradients and never larger on the cuts, so
    one probe per sector suffices.
    """
    active = grads[np.any(grads != 0.0, axis=1)]
    if len(active) == 0:
        return np.array([1.0, 0.0]), 0, 1
    phi = np.arctan2(active[:, 1], active[:, 0])
    cuts = np.sort(np.mod(np.concatenate([phi + math.pi / 2, phi - math.pi / 2]), 2 * math.pi))
    cuts = np.unique(cuts)
    nxt = np.append(cuts[1:], cuts[0] + 2 * math.pi)
    probes = (cuts + nxt) / 2
    dirs = np.column_stack([np.cos(probes), np.sin(probes)])
    counts = (dirs @ active.T > 0).sum(axis=1)
    best = int(np.argmax(counts))
    return dirs[best], int(counts[best]), len(dirs)


def _sampled_directions(grads: np.ndarray, samples: int, seed: int) -> np.ndarray:
    k = grads.shape[1]
    base = generate_directions(k, samples, seed)
    extra = []
    nz = [g / np.linalg.norm(g) for g in grads if np.any(g != 0.0)]
    extra.extend(nz)
    for a, b in itertools.combinations(nz, 2):
        s = a + b
        if np.linalg.norm(s) > 1e-12:
            extra.append(s / np.linalg.norm(s))
    dirs = np.vstack([base, -base] + ([np.array(extra)] if extra else []))
    return dirs


def is_in_core(situation: VotingSituation, z, samples: int = 4096, seed: int = 0) -> CoreVerdict:
    """Interior core test by the directional majority criterion.

    Exact for ``k <= 2``; for ``k >= 3`` the directions are a seeded sample
    (plus normalised gradients and their pairwise sums), so ``False`` is always
    certified by the returned direction while ``True`` is sample-limited.
    """
    z = as_point(z, situation.dimension)
    if not situation.is_interior(z):
        raise InstanceError("core test needs a point in the interior of the policy space")
    grads = gradients_at(situation, z)
    k = situation.dimension
    if k == 1:
        g = grads[:, 0]
        cand = [(np.array([1.0]), int((g > 0).sum())), (np.array([-1.0]), int((g < 0).sum()))]
        v, c = max(cand, key=lambda vc: vc[1])
        exact, checked = True, 2
    elif k == 2:
        v, c, checked = _sweep_2d(grads)
        exact = True
    else:
        dirs = _sampled_directions(grads, samples, seed)
        counts = (dirs @ grads.T > 0).sum(axis=1)
        best = int(np.argmax(counts))
        v, c, checked, exact = dirs[best], int(counts[best]), len(dirs), False
    if c > situation.size / 2:
        return CoreVerdict(False, v, c, exact, checked)
    return CoreVerdict(True, None, None, exact, checked)


# ---------------------------------------------------------------------------
# grid oracles

def grid_points(situation: VotingSituation, resolution: int, inject=None) -> tuple[np.ndarray, int]:
    """Axis-uniform grid over the space, with ``inject`` added exactly.

    Grid nodes within ``eps_point`` of ``inject`` are replaced by it.  Returns
    the points and the index of the injected point (-1 when absent).
    """
    if resolution < 2:
        raise ValueError("grid resolution must be >= 2")
    lo, hi = situation.space.bounds()
    axes = [np.linspace(lo[a], hi[a], resolution) for a in range(situation.dimension)]
    pts = np.array(list(itertools.product(*axes)))
    pts = pts[situation.space.contains_many(pts, situation.eps_point)]
    if inject is None:
        return pts, -1
    z = as_point(inject, situation.dimension)
    keep = np.linalg.norm(pts - z, axis=1) > situation.eps_point
    pts = np.vstack([z[None, :], pts[keep]])
    return pts, 0


def default_grid_resolution(k: int) -> int:
    """41 per axis in the plane; coarser in higher dimensions to stay near 2000 nodes."""
    if k <= 2:
        return 41
    return max(5, int(round(2000 ** (1.0 / k))))


def grid_spacing(situation: VotingSituation, resolution: int) -> float:
    lo, hi = situation.space.bounds()
    return float(np.max(hi - lo)) / (resolution - 1)


@functools.lru_cache(maxsize=8)
def stencil_directions(k: int) -> np.ndarray:
    """Dense deterministic unit directions (both orientations)."""
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        theta = np.arange(720) * (math.pi / 360)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    base = generate_directions(k, 2048, seed=12345)
    return np.vstack([base, -base])


def local_dominator(situation: VotingSituation, g, spacing: float, levels: int = 6):
    """Search a local stencil around ``g`` for a point that beats it.

    Candidates are ``g + h v`` for ``h = spacing / 2**j`` (``j = 1..levels``)
    and dense directions ``v``.  In the plane the candidates closest to
    winning are then re-searched on finer angular fans, since the winning set
    near an almost-undominated point can be a very thin wedge.  Closeness is
    the majority-th largest utility gain over ``h``.  Utility comparisons
    only: no gradients.
    """
    g = np.asarray(g, dtype=float)
    k = situation.dimension
    q = situation.majority
    dirs = stencil_directions(k)
    hs = spacing / 2.0 ** np.arange(1, levels + 1)
    ug = situation.utilities(g[None, :])[:, 0]

    def margin(hh, vv):
        cand = g[None, :] + hh[:, None] * vv
        inside = situation.space.contains_many(cand)
        out = np.full(len(cand), -np.inf)
        if inside.any():
            gain = situation.utilities(cand[inside]) - ug[:, None]
            out[inside] = np.sort(gain, axis=0)[-q] / hh[inside]
        return cand, out

    hh = np.repeat(hs, len(dirs))
    cand, score = margin(hh, np.tile(dirs, (levels, 1)))
    hits = np.flatnonzero(score > 0)
    if hits.size:
        return cand[hits[0]]
    if k != 2:
        return None
    theta = np.tile(np.arange(len(dirs)) * (2 * math.pi / len(dirs)), levels)
    width = math.pi / len(dirs)
    for _ in range(_ZOOM_ROUNDS):
        best = np.argsort(-score, kind="stable")[:_ZOOM_KEEP]
        best = best[np.isfinite(score[best])]
        fan = np.linspace(-width, width, _ZOOM_FAN)
        theta = (theta[best, None] + fan[None, :]).ravel()
        hh = np.repeat(hh[best], _ZOOM_FAN)
        cand, score = margin(hh, np.column_stack([np.cos(theta), np.sin(theta)]))
        hits = np.flatnonzero(score > 0)
        if hits.size:
            return cand[hits[0]]
        width /= (_ZOOM_FAN - 1) / 2
    return None


_ZOOM_ROUNDS = 3
_ZOOM_KEEP = 256
_ZOOM_FAN = 33


def find_dominator(situation: VotingSituation, z, resolution: int = 41, refine: bool = True):
    """Brute-force search for a point beating ``z``: grid first, then a local stencil."""
    z = situation.check_point(z, "z")
    pts, _ = grid_points(situation, resolution)
    u = situation.utilities(pts)
    uz = situation.utilities(z[None, :])[:, 0]
    against = (u > uz[:, None]).sum(axis=0)
    hits = np.flatnonzero(against >= situation.majority)
    if hits.size:
        return pts[hits[0]]
    if refine:
        return local_dominator(situation, z, grid_spacing(situation, resolution))
    return None


@dataclass(frozen=True, eq=False)
class SingletonCoreReport:
    singleton: bool
    resolution: int
    grid_size: int
    undominated: np.ndarray  # grid points (other than z) for which no dominator was found
    refined: int = 0  # grid points settled only by the local stencil

    def to_dict(self) -> dict:
        return {
            "singleton": self.singleton,
            "grid_resolution": self.resolution,
            "grid_size": self.grid_size,
            "undominated": self.undominated.tolist(),
            "refined": self.refined,
            "method": "grid + local stencil falsification (desk-scale oracle, not a proof)",
        }


def certify_singleton_core(situation: VotingSituation, z, resolution: int | None = None,
                           backend: str | None = None, refine: bool = True) -> SingletonCoreReport:
    """Every grid point other than ``z`` must be beaten by something.

    Dominators are searched among ``z`` and the other grid points, then (for
    the survivors, when ``refine``) on a local stencil around each survivor.
    """
    if resolution is None:
        resolution = default_grid_resolution(situation.dimension)
    pts, zi = grid_points(situation, resolution, inject=z)
    u = situation.utilities(pts)
    dom = kernels.first_dominators(u, situation.majority, zi, backend=backend)
    free = np.flatnonzero(dom < 0)
    free = free[free != zi]
    refined = 0
    if refine and free.size:
        h = grid_spacing(situation, resolution)
        keep = []
        for i in free:
            if local_dominator(situation, pts[i], h) is None:
                keep.append(i)
            else:
                refined += 1
        free = np.array(keep, dtype=int)
    return SingletonCoreReport(free.size == 0, resolution, len(pts), pts[free], refined)


# ---------------------------------------------------------------------------
# Condorcet winner

def antipodal_certificate(situation: VotingSituation, z) -> str | None:
    """Recognise ideals at ``z`` plus antipodal pairs with shared metrics.

    For a pair with ideals ``z +- a`` and common metric ``M``, the two
    utilities at ``y`` sum to ``2 u(z) - 2 (y-z)^T M (y-z)``, so at least one
    member strictly prefers ``z`` to any ``y != z``.  Voters with ideal at
    ``z`` always do.  ``z`` beats everything when those guaranteed supporters
    form a strict majority.
    """
    z = as_point(z, situation.dimension)
    eps = situation.eps_point
    centre = set(situation.ideals_near(z))
    if len(centre) == situation.size:
        return "unanimity"
    rest = [i for i in range(situation.size) if i not in centre]
    offsets = situation.ideals - z
    used: set[int] = set()
    pairs = 0
    for i in rest:
        if i in used:
            continue
        for j in rest:
            if j <= i or j in used:
                continue
            if (np.linalg.norm(offsets[i] + offsets[j]) <= eps
                    and np.array_equal(situation.voters[i].metric, situation.voters[j].metric)):
                used.update((i, j))
                pairs += 1
                break
    if len(centre) + pairs > situation.size / 2:
        return "antipodal-pairs"
    return None


def _sweep_lines(situation: VotingSituation, z: np.ndarray, lines: int, seed: int):
    """Yield ``(line, report)`` for each swept line through ``z``."""
    for d in generate_directions(situation.dimension, lines, seed):
        line = clip_line(situation.space, z, d, situation.eps_point)
        yield line, analyze_line(situation, line)


def is_condorcet_winner(situation: VotingSituation, z, budget: Budget = Budget(),
                        seed: int = 0) -> CondorcetVerdict:
    z = situation.check_point(z, "z")
    cert = antipodal_certificate(situation, z)
    if cert is not None:
        return CondorcetVerdict(CondorcetStatus.CERTIFIED_WINNER, certificate=cert)
    lines_used = 0
    if situation.is_even and situation.is_interior(z) and situation.dimension >= 1:
        n_lines = budget.lines if situation.dimension > 1 else 1
        for line, rep in _sweep_lines(situation, z, n_lines, seed):
            lines_used += 1
            if rep.witness is None:
                continue
            verdict = dominates(situation, z, rep.witness)
            if not verdict.dominates:
                return CondorcetVerdict(CondorcetStatus.CERTIFIED_NOT_WINNER, rep.witness,
                                        lines_used=lines_used, line=line, counts=verdict)
    used = 0
    if budget.challenges > 0:
        rng = np.random.default_rng(seed)
        ys = situation.space.sample(rng, budget.challenges)
        ys = ys[np.linalg.norm(ys - z, axis=1) > situation.eps_point]
        uz = situation.utilities(z[None, :])[:, 0]
        support = kernels.counts_against(uz, situation.utilities(ys))
        fails = np.flatnonzero(support < situation.majority)
        used = len(ys) if fails.size == 0 else int(fails[0]) + 1
        if fails.size:
            y = ys[fails[0]]
            return CondorcetVerdict(CondorcetStatus.CERTIFIED_NOT_WINNER, y,
                                    lines_used=lines_used, challenges_used=used,
                                    counts=dominates(situation, z, y))
    return CondorcetVerdict(CondorcetStatus.NOT_FALSIFIED, lines_used=lines_used,
                            challenges_used=used)


# ---------------------------------------------------------------------------
# verification harnesses

@dataclass(frozen=True, eq=False)
class Prop1Report:
    """Outcome of the even-electorate check.

    ``assumptions_met`` False means ``failed_clause`` names the first
    unmet hypothesis; no verdict is computed in that case.
    """

    assumptions_met: bool
    failed_clause: str | None = None
    core: CoreVerdict | None = None
    singleton: SingletonCoreReport | None = None
    verdict: CondorcetVerdict | None = None
    line_report: Lemma1Report | None = None

    @property
    def witness(self):
        return None if self.verdict is None else self.verdict.witness

    @property
    def falsified(self) -> bool:
        return self.verdict is not None and self.verdict.status is CondorcetStatus.CERTIFIED_NOT_WINNER

    def to_dict(self) -> dict:
        return {
            "kind": "even",
            "assumptions_met": self.assumptions_met,
            "failed_clause": self.failed_clause,
            "core": None if self.core is None else self.core.to_dict(),
            "singleton_core": None if self.singleton is None else self.singleton.to_dict(),
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
            "line_report": None if self.line_report is None else self.line_report.to_dict(),
            "falsified": self.falsified,
        }


def verify_proposition1(situation: VotingSituation, z, budget: Budget = Budget(challenges=0),
                        seed: int = 0, grid: int | None = None) -> Prop1Report:
    """Check the even-electorate hypotheses at ``z``, then falsify ``z`` as a Condorcet winner."""
    z = as_point(z, situation.dimension)
    if not situation.is_even:
        return Prop1Report(False, "|N| odd")
    if not situation.is_interior(z):
        return Prop1Report(False, "z not interior")
    core = is_in_core(situation, z)
    if not core.in_core:
        return Prop1Report(False, "z not in core", core=core)
    if len(situation.ideals_near(z)) > 1:
        return Prop1Report(False, "more than one ideal at z", core=core)
    single = certify_singleton_core(situation, z, grid)
    if not single.singleton:
        return Prop1Report(False, "core not singleton on grid", core=core, singleton=single)
    used = 0
    for line, rep in _sweep_lines(situation, z, budget.lines, seed):
        used += 1
        if rep.witness is None:
            continue
        dv = dominates(situation, z, rep.witness)
        if not dv.dominates:
            verdict = CondorcetVerdict(CondorcetStatus.CERTIFIED_NOT_WINNER, rep.witness,
                                       lines_used=used, line=line, counts=dv)
            return Prop1Report(True, None, core, single, verdict, rep)
    # a theorem violation if reached: report whatever the general test finds
    verdict = is_condorcet_winner(situation, z, budget, seed)
    return Prop1Report(True, None, core, single, verdict)


@dataclass(frozen=True, eq=False)
class Prop1PrimeReport:
    passed: bool
    failed_clause: str | None = None
    core: CoreVerdict | None = None
    certificate: str | None = None
    challenges: int = 0
    failures: int = 0
    failing_challenger: np.ndarray | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "odd",
            "passed": self.passed,
            "failed_clause": self.failed_clause,
            "core": None if self.core is None else self.core.to_dict(),
            "certificate": self.certificate,
            "challenges": self.challenges,
            "failures": self.failures,
            "failing_challenger": _list(self.failing_challenger),
        }


def verify_proposition1prime(situation: VotingSituation, z, challenges: int = 10_000,
                             seed: int = 0) -> Prop1PrimeReport:
    """Odd electorate: an interior core point must beat every sampled challenger."""
    if situation.is_even:
        raise InstanceError("parity: needs an odd number of voters")
    z = situation.check_point(z, "z")
    interior = situation.is_interior(z)
    core = None
    if interior:
        core = is_in_core(situation, z)
        if not core.in_core:
            return Prop1PrimeReport(False, "z not in core", core)
        if not situation.ideals_near(z):
            return Prop1PrimeReport(False, "no ideal at interior core point", core)
    cert = antipodal_certificate(situation, z)
    rng = np.random.default_rng(seed)
    ys = situation.space.sample(rng, challenges)
    ys = ys[np.linalg.norm(ys - z, axis=1) > situation.eps_point]
    uz = situation.utilities(z[None, :])[:, 0]
    support = kernels.counts_against(uz, situation.utilities(ys)) if len(ys) else np.zeros(0)
    fails = np.flatnonzero(support < situation.majority)
    first = ys[fails[0]] if fails.size else None
    return Prop1PrimeReport(fails.size == 0, None if fails.size == 0 else "challenger not beaten",
                            core, cert, len(ys), int(fails.size), first)
