"""Command line front end.

Every command builds a report dict with the keys ``schema_version``,
``command``, ``inputs``, ``results`` and ``warnings`` and renders it as JSON
(sorted keys) or as indented text.  Exit codes: 0 on success, 2 on invalid
input, 1 when an internal consistency assertion fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import diophantine, k3, moduli, walls
from .errors import InvalidInput
from .lattice import DivisorClass, SurfaceModel, minus_one_classes

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# rendering


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _text_lines(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _flat(v: Any) -> bool:
    return isinstance(v, list) and not any(isinstance(i, (dict, list)) for i in v)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(i) for i in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return json.dumps(v) if isinstance(v, (bool, type(None))) else str(v)


def render_text(report: dict) -> str:
    return "\n".join(_text_lines(report, 0)) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise InvalidInput(f"unknown format {fmt!r}")


def make_report(command: str, inputs: dict, results: dict, warnings: Sequence[str] = ()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "warnings": list(warnings),
    }


# ---------------------------------------------------------------------------
# argument helpers


def _surface(args, *classes: DivisorClass) -> SurfaceModel:
    """Surface from --n, or inferred from the classes, cross-checked."""
    lengths = {c.n for c in classes}
    if len(lengths) > 1:
        raise InvalidInput(f"classes have different numbers of exceptional coordinates: {sorted(lengths)}")
    inferred = lengths.pop() if lengths else None
    n = args.n if args.n is not None else inferred
    if n is None:
        raise InvalidInput("--n is required")
    if inferred is not None and inferred != n:
        raise InvalidInput(f"--n {n} does not match the {inferred} exceptional coordinates given")
    return SurfaceModel(n)


def _required(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InvalidInput(f"--{name} is required for {args.command}")
    return value


def _wall_dict(w: walls.Wall) -> dict:
    return {"zeta": str(w.zeta), "zeta_sq": w.zeta_sq, "pretty": w.zeta.pretty()}


# ---------------------------------------------------------------------------
# commands


def cmd_walls(args) -> dict:
    c1 = _required(args, "c1")
    c2 = _required(args, "c2")
    extra = [c for c in (args.L0, args.L) if c is not None]
    S = _surface(args, c1, *extra)
    spec = walls.WallSpec(S, c1, c2)
    inputs = {"n": S.n, "c1": str(c1), "c2": c2, "region": args.region}
    if args.region == walls.FULL_CONE:
        region = walls.FULL_CONE
    elif args.region == "segment":
        start, end = _required(args, "L0"), _required(args, "L")
        region = walls.Segment(start, end)
        inputs.update({"L0": str(start), "L": str(end)})
    else:
        raise InvalidInput(f"unknown region {args.region!r}; use full-cone or segment")
    found = walls.enumerate_walls(spec, region)
    results = {
        "x": spec.x,
        "walls": [str(w.zeta) for w in found],
        "details": [_wall_dict(w) for w in found],
    }
    return make_report("walls", inputs, results)


def cmd_generic(args) -> dict:
    c1, c2, L = _required(args, "c1"), _required(args, "c2"), _required(args, "L")
    S = _surface(args, c1, L)
    spec = walls.WallSpec(S, c1, c2)
    on = walls.walls_through(spec, L)
    inputs = {"n": S.n, "c1": str(c1), "c2": c2, "L": str(L)}
    return make_report("generic", inputs, {"generic": not on, "walls_through": [str(w.zeta) for w in on]})


def cmd_crossings(args) -> dict:
    c1, c2 = _required(args, "c1"), _required(args, "c2")
    L0, L = _required(args, "L0"), _required(args, "L")
    S = _surface(args, c1, L0, L)
    spec = walls.WallSpec(S, c1, c2)
    found = walls.separating_walls(spec, L0, L)
    inputs = {"n": S.n, "c1": str(c1), "c2": c2, "L0": str(L0), "L": str(L)}
    results = {
        "same_chamber": not found,
        "crossings": [{"wall": str(c.wall.zeta), "orientation": c.orientation} for c in found],
    }
    return make_report("crossings", inputs, results)


def cmd_analyze(args) -> dict:
    c1, c2, L = _required(args, "c1"), _required(args, "c2"), _required(args, "L")
    S = _surface(args, c1, L)
    report = moduli.analyze(S, c1, c2, L)
    results = report.as_dict()
    warnings = results.pop("warnings")
    inputs = {"n": S.n, "c1": str(c1), "c2": c2, "L": str(L)}
    return make_report("analyze", inputs, results, warnings)


def cmd_minus_one(args) -> dict:
    S = SurfaceModel(_required(args, "n"))
    classes = minus_one_classes(S)
    results = {"count": len(classes), "classes": [str(c) for c in classes]}
    return make_report("minus-one", {"n": S.n}, results)


def _surd_dict(v: diophantine.QuadraticSurd) -> dict:
    return {"exact": str(v), "decimal": str(v.decimal(30)), "floor": v.floor()}


def cmd_dioph(args) -> dict:
    x = _required(args, "x")
    inputs: dict = {"x": x}
    if args.action == "classify":
        sols = diophantine.classify_positive_b(x)
        results = {"solutions": [s.as_dict() for s in sols]}
    elif args.action == "brute":
        lo, hi = diophantine.default_b_range(x)
        bmin = lo if args.bmin is None else args.bmin
        bmax = hi if args.bmax is None else args.bmax
        inputs.update({"bmin": bmin, "bmax": bmax, "ordered": args.ordered})
        sols = diophantine.brute_solutions(x, bmin, bmax, ordered=args.ordered)
        results = {"count": len(sols), "solutions": [s.as_dict() for s in sols]}
    else:
        b_minus, b_plus = diophantine.real_b_bounds(x)
        results = {
            "discriminant": diophantine.bound_discriminant(x),
            "b_minus": _surd_dict(b_minus),
            "b_plus": _surd_dict(b_plus),
        }
    return make_report(f"dioph {args.action}", inputs, results)


def _bn(cfg: k3.K3Config) -> tuple[dict, int | None]:
    if k3.is_small_c2(cfg):
        return k3.bn_instance_small(cfg).as_dict(), None
    n = k3.regime(cfg)
    return k3.bn_instance_large(cfg, n).as_dict(), n


def cmd_k3(args) -> dict:
    cfg = k3.K3Config(_required(args, "l2"), _required(args, "c2"))
    inputs = {"l2": cfg.L_squared, "c2": cfg.c2}
    small = k3.is_small_c2(cfg)
    if args.action == "regime":
        results = {"small_c2": small, "regime": None if small else k3.regime(cfg)}
    elif args.action == "bn":
        bn, n = _bn(cfg)
        results = {"small_c2": small, "regime": n, "brill_noether": bn}
    else:
        bn, n = _bn(cfg)
        results = {
            "small_c2": small,
            "regime": n,
            "dim_moduli": k3.moduli_dim_k3(cfg),
            "brill_noether": bn,
            "nonlocallyfree_param_count": {
                str(l): k3.nonlocallyfree_param_count(cfg, l) for l in (1, 2)
            },
        }
        if n is not None:
            results["type_m"] = [k3.type_m_report(cfg, n, m).as_dict() for m in range(n + 1)]
    return make_report(f"k3 {args.action}", inputs, results)


# ---------------------------------------------------------------------------
# parser


def _divisor(text: str) -> DivisorClass:
    try:
        return DivisorClass.parse(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def _chern(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of blown-up points (inferred from --c1 when omitted)")
    p.add_argument("--c1", type=_divisor, help="first Chern class as b,a1,...,an")
    p.add_argument("--c2", type=int, help="second Chern class")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafwalls",
        description="Walls, chambers and dimension counts for rank 2 sheaves on del Pezzo and K3 surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("walls", help="enumerate walls of type (c1, c2)")
    _chern(p)
    p.add_argument("--region", default=walls.FULL_CONE, help="full-cone (default) or segment (uses --L0 and --L)")
    p.add_argument("--L0", type=_divisor)
    p.add_argument("--L", type=_divisor)
    _common(p)
    p.set_defaults(func=cmd_walls)

    p = sub.add_parser("generic", help="is a polarization off every wall")
    _chern(p)
    p.add_argument("--L", type=_divisor)
    _common(p)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("crossings", help="walls separating two polarizations")
    _chern(p)
    p.add_argument("--L0", type=_divisor)
    p.add_argument("--L", type=_divisor)
    _common(p)
    p.set_defaults(func=cmd_crossings)

    p = sub.add_parser("analyze", help="component-creation analysis from the near-H chamber to L")
    _chern(p)
    p.add_argument("--L", type=_divisor)
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("minus-one", help="list the (-1)-classes")
    p.add_argument("--n", type=int)
    _common(p)
    p.set_defaults(func=cmd_minus_one)

    p = sub.add_parser("dioph", help="the wall system in eight variables")
    p.add_argument("action", choices=("classify", "brute", "bounds"))
    p.add_argument("--x", type=int)
    p.add_argument("--bmin", type=int)
    p.add_argument("--bmax", type=int)
    p.add_argument("--ordered", action="store_true", help="list ordered tuples instead of multisets")
    _common(p)
    p.set_defaults(func=cmd_dioph)

    p = sub.add_parser("k3", help="K3 numerology for Pic = Z.L")
    p.add_argument("action", choices=("report", "bn", "regime"))
    p.add_argument("--l2", type=int, help="L^2 (even, >= 2)")
    p.add_argument("--c2", type=int)
    _common(p)
    p.set_defaults(func=cmd_k3)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
        stdout.write(render(report, args.format))
    except InvalidInput as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except AssertionError as exc:
        stderr.write(f"internal consistency check failed: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
