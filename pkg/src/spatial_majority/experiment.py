"""Batch runs of the even/odd verifiers over generated instances."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .generators import GeneratorConfig, core_of, generate
from .solution_concepts import Budget, verify_proposition1, verify_proposition1prime


@dataclass(frozen=True)
class ExperimentConfig:
    """One JSON config file.

    Instance ``i`` uses seed ``seed + i`` and cycles through the product of
    ``pairs`` x ``dimensions`` x ``ideals_at_z``.
    """

    parity: str = "even"
    instances: int = 10
    pairs: tuple[int, ...] = (2,)
    dimensions: tuple[int, ...] = (2,)
    ideals_at_z: tuple[int, ...] = (0,)
    seed: int = 0
    lines: int = 64
    challenges: int = 10_000
    grid: int | None = None
    radius_range: tuple[float, float] = (0.3, 0.9)
    anisotropy: float = 0.0
    min_separation_deg: float = 5.0

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        for key in ("pairs", "dimensions", "ideals_at_z"):
            if key in d:
                v = d[key]
                d[key] = tuple(v) if isinstance(v, list) else (int(v),)
        if "radius_range" in d:
            d["radius_range"] = tuple(d["radius_range"])
        cfg = cls(**d)
        if cfg.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")
        if cfg.instances < 0:
            raise ValueError("instances must be >= 0")
        return cfg

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("pairs", "dimensions", "ideals_at_z", "radius_range"):
            d[key] = list(d[key])
        return d

    def generator_configs(self) -> list[GeneratorConfig]:
        combos = list(itertools.product(self.pairs, self.dimensions, self.ideals_at_z))
        out = []
        for i in range(self.instances):
            pc, k, at = combos[i % len(combos)]
            out.append(GeneratorConfig(
                parity=self.parity, pair_count=pc, dimension=k, seed=self.seed + i,
                radius_range=self.radius_range, ideals_at_z=at if self.parity == "even" else 1,
                min_separation_deg=self.min_separation_deg, anisotropy=self.anisotropy,
            ))
        return out


@dataclass
class ExperimentReport:
    config: dict
    instances: list[dict] = field(default_factory=list)
    wall_clock_s: float | None = None

    @property
    def aggregate(self) -> dict:
        n = len(self.instances)
        passed = sum(1 for r in self.instances if r["passed"])
        return {"instances": n, "passed": passed, "pass_rate": (passed / n) if n else None}

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {"config": self.config, "instances": self.instances, "aggregate": self.aggregate}
        if include_timing and self.wall_clock_s is not None:
            d["wall_clock_s"] = self.wall_clock_s
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(d["config"], list(d["instances"]), d.get("wall_clock_s"))

    def write(self, path, include_timing: bool = False) -> None:
        try:
            Path(path).write_text(self.to_json(include_timing), encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc.strerror}") from exc


def run_instance(gcfg: GeneratorConfig, cfg: ExperimentConfig) -> dict:
    sit = generate(gcfg)
    z = core_of(gcfg)
    rec = {"seed": gcfg.seed, "generator": gcfg.to_dict(), "voters": len(sit)}
    if gcfg.parity == "even":
        rep = verify_proposition1(sit, z, Budget(cfg.lines, 0), gcfg.seed, cfg.grid)
        rec["result"] = rep.to_dict()
        rec["passed"] = bool(rep.assumptions_met and rep.falsified)
    else:
        rep = verify_proposition1prime(sit, z, cfg.challenges, gcfg.seed)
        rec["result"] = rep.to_dict()
        rec["passed"] = bool(rep.passed)
    return rec


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    start = time.perf_counter()
    report = ExperimentReport(cfg.to_dict())
    for i, gcfg in enumerate(cfg.generator_configs()):
        rec = run_instance(gcfg, cfg)
        rec["index"] = i
        report.instances.append(rec)
    report.wall_clock_s = time.perf_counter() - start
    return report


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    return ExperimentConfig.from_dict(json.loads(text))
