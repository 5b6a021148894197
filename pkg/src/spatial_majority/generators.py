"""Seeded instance generators for the even and odd regimes.

Both build antipodal ideal pairs ``z + r d`` and ``z - r d`` around a core
point ``z``.  A pair member strictly prefers ``z`` to ``y`` only when the
other one does not, so no direction gives a strict majority a positive
derivative at ``z``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .model import Box, InstanceError, Voter, VotingSituation


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one generated instance.

    ``ideals_at_z`` applies to the even regime: 0 gives ``2 * pair_count``
    voters; 1 adds a voter at ``z`` and one unpaired voter elsewhere so the
    electorate stays even; 2 adds two voters at ``z`` (``z`` then beats
    everything).  The odd regime always puts exactly one ideal at ``z``.
    """

    parity: str = "even"
    pair_count: int = 2
    dimension: int = 2
    seed: int = 0
    core: tuple[float, ...] | None = None
    radius_range: tuple[float, float] = (0.3, 0.9)
    ideals_at_z: int = 0
    min_separation_deg: float = 5.0
    anisotropy: float = 0.0
    directions: tuple[tuple[float, ...], ...] | None = None
    half_width: float = 1.0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        d = dict(d)
        for key in ("core", "radius_range"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        if d.get("directions") is not None:
            d["directions"] = tuple(tuple(v) for v in d["directions"])
        return cls(**d)


def _spd(rng: np.random.Generator, k: int, anisotropy: float) -> np.ndarray | None:
    if anisotropy <= 0:
        return None
    q, _ = np.linalg.qr(rng.standard_normal((k, k)))
    scales = np.exp(rng.uniform(-anisotropy, anisotropy, size=k))
    m = (q * scales) @ q.T
    return (m + m.T) / 2


def _separated(rng: np.random.Generator, k: int, count: int, cos_sep: float,
               existing: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100_000:
            raise InstanceError("could not place directions with the requested separation")
        g = rng.standard_normal(k)
        n = np.linalg.norm(g)
        if n < 1e-9:
            continue
        d = g / n
        if all(abs(float(d @ e)) <= cos_sep for e in existing + out):
            out.append(d)
    return out


def _pair_directions(cfg: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
    k = cfg.dimension
    if cfg.directions is not None:
        dirs = np.asarray(cfg.directions, dtype=float).reshape(-1, k)
        if dirs.shape != (cfg.pair_count, k):
            raise InstanceError("directions must give one k-vector per pair")
        return dirs / np.linalg.norm(dirs, axis=1)[:, None]
    cos_sep = math.cos(math.radians(cfg.min_separation_deg))
    return np.array(_separated(rng, k, cfg.pair_count, cos_sep, [])).reshape(cfg.pair_count, k)


def _core_point(cfg: GeneratorConfig) -> np.ndarray:
    if cfg.core is None:
        return np.zeros(cfg.dimension)
    z = np.asarray(cfg.core, dtype=float)
    if z.shape != (cfg.dimension,):
        raise InstanceError("core point has the wrong dimension")
    return z


def _build(cfg: GeneratorConfig, centre_voters: int, extra_voter: bool) -> VotingSituation:
    if cfg.dimension < 1:
        raise InstanceError("dimension must be >= 1")
    lo_r, hi_r = cfg.radius_range
    if not 0 < lo_r <= hi_r:
        raise InstanceError("radius range must satisfy 0 < low <= high")
    space = Box.cube(cfg.dimension, cfg.half_width)
    z = _core_point(cfg)
    if not space.is_interior(z):
        raise InstanceError("core point must lie in the interior of the space")
    rng = np.random.default_rng(cfg.seed)
    dirs = _pair_directions(cfg, rng)
    voters: list[Voter] = [Voter(z) for _ in range(centre_voters)]
    for d in dirs:
        r = rng.uniform(lo_r, hi_r)
        m = _spd(rng, cfg.dimension, cfg.anisotropy)
        for sign in (1.0, -1.0):
            p = z + sign * r * d
            if not space.contains(p):
                raise InstanceError("radius places an ideal outside the policy space")
            voters.append(Voter(p, m))
    if extra_voter:
        cos_sep = math.cos(math.radians(cfg.min_separation_deg))
        (d,) = _separated(rng, cfg.dimension, 1, cos_sep, list(dirs))
        p = z + rng.uniform(lo_r, hi_r) * d
        if not space.contains(p):
            raise InstanceError("radius places an ideal outside the policy space")
        voters.append(Voter(p, _spd(rng, cfg.dimension, cfg.anisotropy)))
    return VotingSituation(space, tuple(voters))


def gen_even_pairs(cfg: GeneratorConfig) -> VotingSituation:
    if cfg.ideals_at_z not in (0, 1, 2):
        raise InstanceError("ideals_at_z must be 0, 1 or 2")
    if cfg.pair_count < 1:
        raise InstanceError("pair_count must be >= 1")
    singleton_dirs = cfg.pair_count + (1 if cfg.ideals_at_z == 1 else 0)
    if cfg.ideals_at_z <= 1 and singleton_dirs < 2 and cfg.dimension >= 2:
        raise InstanceError("need >= 2 directions for a singleton core")
    return _build(cfg, cfg.ideals_at_z, extra_voter=cfg.ideals_at_z == 1)


def gen_odd_plott(cfg: GeneratorConfig) -> VotingSituation:
    if cfg.pair_count < 0:
        raise InstanceError("pair_count must be >= 0")
    return _build(cfg, 1, extra_voter=False)


def generate(cfg: GeneratorConfig) -> VotingSituation:
    if cfg.parity == "even":
        return gen_even_pairs(cfg)
    if cfg.parity == "odd":
        return gen_odd_plott(cfg)
    raise InstanceError(f"parity must be 'even' or 'odd', got {cfg.parity!r}")


def core_of(cfg: GeneratorConfig) -> np.ndarray:
    return _core_point(cfg)
