"""Command-line entry point: ``spatial-majority <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path


from .experiment import load_config, run_experiment
from .generators import GeneratorConfig, generate
from .model import InstanceError, dump_instance, load_instance
from .render import Annotations, render_svg
from .solution_concepts import (Budget, CondorcetStatus, is_condorcet_winner, is_in_core,
                                verify_proposition1, verify_proposition1prime, grid_points)
from .tournament import build_tournament, finite_condorcet, finite_core, gillies_uncovered


def _point(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lines", type=int, default=64, help="lines swept through z (default 64)")
    p.add_argument("--challenges", type=int, default=10_000, help="random challengers (default 10000)")
    p.add_argument("--eps", type=float, default=1e-8, help="relative point tolerance (default 1e-8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out", type=Path, default=None, help="also write the JSON result here")


def _load(args):
    return load_instance(args.instance, tolerance=args.eps)


def _z(args, sit):
    if getattr(args, "z", None) is None:
        lo, hi = sit.space.bounds()
        return (lo + hi) / 2
    return sit.check_point(args.z, "z")


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if getattr(args, "json_out", None) is not None:
        args.json_out.write_text(text, encoding="utf-8")


def cmd_analyze(args) -> None:
    sit = _load(args)
    z = _z(args, sit)
    out = {"z": z.tolist(), "voters": len(sit), "parity": "even" if sit.is_even else "odd",
           "interior": sit.is_interior(z), "ideals_at_z": sit.ideals_near(z)}
    if sit.is_interior(z):
        out["core"] = is_in_core(sit, z, seed=args.seed).to_dict()
    out["condorcet"] = is_condorcet_winner(sit, z, Budget(args.lines, args.challenges), args.seed).to_dict()
    _emit(args, out)


def cmd_verify_prop1(args) -> None:
    sit = _load(args)
    rep = verify_proposition1(sit, _z(args, sit), Budget(args.lines, 0), args.seed, args.grid)
    _emit(args, rep.to_dict())


def cmd_verify_prop1prime(args) -> None:
    sit = _load(args)
    if sit.is_even:
        _emit(args, {"kind": "odd", "passed": False, "failed_clause": "|N| even"})
        return
    rep = verify_proposition1prime(sit, _z(args, sit), args.challenges, args.seed)
    _emit(args, rep.to_dict())


def cmd_tournament(args) -> None:
    sit = _load(args)
    z = _z(args, sit)
    pts, zi = grid_points(sit, args.grid, inject=z)
    t = build_tournament(sit, pts)
    cw = finite_condorcet(t)
    unc = gillies_uncovered(t)
    core = finite_core(t)
    out = {
        "grid_resolution": args.grid,
        "alternatives": len(pts),
        "z": z.tolist(),
        "finite_condorcet": None if cw is None else pts[cw].tolist(),
        "z_is_finite_condorcet": cw == zi,
        "finite_core_size": len(core),
        "uncovered_size": len(unc),
        "uncovered_is_z": unc == [zi],
        "uncovered": pts[unc].tolist(),
    }
    if args.export is not None:
        args.export.write_text(t.to_json(), encoding="utf-8")
    _emit(args, out)


def cmd_generate(args) -> None:
    cfg = GeneratorConfig(parity=args.parity, pair_count=args.pairs, dimension=args.dim,
                          seed=args.seed, ideals_at_z=args.ideals_at_z if args.parity == "even" else 1,
                          anisotropy=args.anisotropy)
    sit = replace(generate(cfg), tolerance=args.eps)
    text = dump_instance(sit)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")


def cmd_render(args) -> None:
    sit = _load(args)
    ann = Annotations()
    if args.z is not None or args.witness:
        z = _z(args, sit)
        ann = Annotations(core=z)
        if args.witness and sit.is_even and sit.is_interior(z):
            v = is_condorcet_winner(sit, z, Budget(args.lines, 0), args.seed)
            if v.status is CondorcetStatus.CERTIFIED_NOT_WINNER:
                ann = Annotations(core=z, witness=v.witness, line=v.line,
                                  segment=(z, v.witness))
    args.out.write_text(render_svg(sit, ann), encoding="utf-8")


def cmd_experiment(args) -> None:
    cfg = load_config(args.config)
    if args.lines_set:
        cfg = replace(cfg, lines=args.lines)
    report = run_experiment(cfg)
    text = report.to_json(include_timing=args.timing)
    sys.stdout.write(json.dumps(report.aggregate, sort_keys=True) + "\n")
    if args.json_out is not None:
        report.write(args.json_out, include_timing=args.timing)
    elif args.verbose:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spatial-majority", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="core / Condorcet status of a point")
    p.add_argument("instance", type=Path)
    p.add_argument("--z", type=_point, default=None, help="point to test (default: centre of the space)")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-prop1", help="even electorate: falsify z as Condorcet winner")
    p.add_argument("instance", type=Path)
    p.add_argument("--z", type=_point, default=None)
    p.add_argument("--grid", type=int, default=None, help="singleton-core grid per axis")
    _common(p)
    p.set_defaults(func=cmd_verify_prop1)

    p = sub.add_parser("verify-prop1prime", help="odd electorate: z beats all challengers")
    p.add_argument("instance", type=Path)
    p.add_argument("--z", type=_point, default=None)
    _common(p)
    p.set_defaults(func=cmd_verify_prop1prime)

    p = sub.add_parser("tournament", help="finite tournament over a grid plus z")
    p.add_argument("instance", type=Path)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--z", type=_point, default=None)
    p.add_argument("--export", type=Path, default=None, help="write the tournament matrix JSON")
    _common(p)
    p.set_defaults(func=cmd_tournament)

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("--parity", choices=["even", "odd"], required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--ideals-at-z", type=int, default=0, choices=[0, 1, 2])
    p.add_argument("--anisotropy", type=float, default=0.0)
    p.add_argument("--out", type=Path, default=None)
    _common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", help="SVG picture of a planar instance")
    p.add_argument("instance", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--z", type=_point, default=None)
    p.add_argument("--witness", action="store_true", help="draw a non-Condorcet witness for z")
    _common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("experiment", help="batch run from a JSON config")
    p.add_argument("config", type=Path)
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--verbose", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    argv_list = sys.argv[1:] if argv is None else argv
    args.lines_set = "--lines" in argv_list
    try:
        args.func(args)
    except (InstanceError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
