"""``fiberwalk`` command line.

Subcommands: enumerate, graph, analyze, sweep, sample, graver. Exit codes are
0 on success, 2 for invalid input, 3 when a region is unbounded or a resource
cap is hit, 4 for anything unexpected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import traceback
from pathlib import Path

from . import __version__
from .augment import DEFAULT_STATE_CAP
from .basis import graver_basis
from .errors import FiberwalkError, ResourceError, ValidationError
from .graph import build_compressed_graph, build_fiber_graph, diameter
from .instance import Instance, parse_rational
from .report import analyze
from .sampler import PRNG_NAME, empirical_tv, run_chains, tv_curve
from .spectral import spectrum
from .walk import TargetDistribution, heat_bath_matrix, simple_walk_matrix

EXIT_OK, EXIT_VALIDATION, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def _dump(obj) -> str:
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text) + "\n"


def _fmt(x) -> str:
    return "inf" if x == math.inf else str(x)


# --- subcommands --------------------------------------------------------------

def cmd_enumerate(args, inst: Instance) -> None:
    F = inst.points()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(F.dim)])
        w.writerows(F)
        _emit(buf.getvalue(), args.out)
    elif args.format == "json":
        _emit(_dump({"dim": F.dim, "count": len(F), "points": [list(p) for p in F]}), args.out)
    else:
        raise ValidationError("enumerate writes json or csv")


def cmd_graph(args, inst: Instance) -> None:
    F, M = inst.points(), inst.moves(args.cap)
    G = build_compressed_graph(F, M) if args.compressed else build_fiber_graph(F, M)
    if args.format == "dot":
        _emit(G.to_dot() + "\n", args.out)
    elif args.format == "json":
        _emit(_dump(G.to_json()), args.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "move", "lambda"])
        for (i, j), (k, lam) in zip(G.edges, G.labels):
            w.writerow([i, j, k, lam])
        _emit(buf.getvalue(), args.out)


def cmd_analyze(args, inst: Instance) -> None:
    if args.format != "json":
        raise ValidationError("analyze writes json")
    F, M = inst.points(), inst.moves(args.cap)
    polytope = None if inst.set_kind == "points" else inst.polytope()
    report = analyze(F, M, inst.move_distribution(), inst.target(), inst.mprime,
                     inst.data.get("variants"), cap=args.cap or DEFAULT_STATE_CAP, polytope=polytope)
    _emit(_dump(report), args.out)


def _sweep_rows(inst: Instance, cap) -> tuple[str, list[tuple[str, str]]]:
    sw = inst.sweep
    if sw is None:
        raise ValidationError("instance has no sweep section")
    kind = sw["kind"]
    measure = sw.get("measure", "slem" if kind in ("mu", "weights") else "diameter")
    rows = []
    for value in sw["values"]:
        if kind == "dilation":
            F, f = inst.points(dilation=_int(value)), None
        elif kind == "rhs":
            base, direction = sw.get("base"), sw.get("direction")
            if base is None or direction is None or len(base) != len(direction):
                raise ValidationError("rhs sweeps need base and direction of equal length")
            t = _int(value)
            F, f = inst.points(rhs=[b + t * d for b, d in zip(base, direction)]), None
        elif kind == "mu":
            mu = parse_rational(value)
            F, f = inst.points(), inst.move_distribution([mu, 1 - mu])
        else:
            F, f = inst.points(), inst.move_distribution(value)
        M = inst.moves(cap)
        if measure == "diameter":
            res = _fmt(diameter(build_fiber_graph(F, M)))
        elif measure == "compressed_diameter":
            res = _fmt(diameter(build_compressed_graph(F, M)))
        elif measure == "simple_slem":
            res = repr(spectrum(simple_walk_matrix(F, M)).slem)
        else:
            f = f or inst.move_distribution()
            res = repr(spectrum(heat_bath_matrix(F, f, inst.target())).slem)
        rows.append((json.dumps(value) if not isinstance(value, (int, str)) else str(value), res))
    return measure, rows


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"sweep value {v!r} must be an integer")
    return v


def cmd_sweep(args, inst: Instance) -> None:
    measure, rows = _sweep_rows(inst, args.cap)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["parameter", measure])
        w.writerows(rows)
        _emit(buf.getvalue(), args.out)
    elif args.format == "json":
        _emit(_dump({"kind": inst.sweep["kind"], "measure": measure,
                     "rows": [{"parameter": p, measure: v} for p, v in rows]}), args.out)
    else:
        raise ValidationError("sweep writes csv or json")


def cmd_sample(args, inst: Instance) -> None:
    cfg = inst.sample
    steps = args.steps if args.steps is not None else cfg.get("steps")
    seed = args.seed if args.seed is not None else cfg.get("seed")
    if steps is None or seed is None:
        raise ValidationError("sampling needs --steps and --seed (or a sample section)")
    if "start" not in cfg:
        raise ValidationError("sample section needs a start point")
    F = inst.points()
    target = TargetDistribution(len(F), inst.target())
    f = inst.move_distribution()
    chains = cfg.get("chains", 1)
    trajs = run_chains(F, f, target, [cfg["start"]] * chains, steps, seed,
                       burn_in=cfg.get("burn_in", 0), thin=cfg.get("thin", 1))
    diagnostics = {
        "prng": PRNG_NAME,
        "seed": seed,
        "steps": steps,
        "chains": [{"stream": t.stream, "tv": empirical_tv(t, target, F),
                    "tv_curve": tv_curve(t, target, F, cfg.get("checkpoints"))} for t in trajs],
    }
    pooled = [p for t in trajs for p in t.points]
    diagnostics["tv"] = empirical_tv(pooled, target, F)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["chain", "step", "move"] + [f"x{i + 1}" for i in range(F.dim)])
        for t in trajs:
            for s, (p, k) in enumerate(zip(t.points, t.moves), start=1):
                w.writerow([t.stream, s, k, *p])
        body = buf.getvalue()
    elif args.format == "json":
        body = _dump({"trajectories": [t.to_json() for t in trajs]})
    else:
        raise ValidationError("sample writes csv or json")
    if args.out:
        Path(args.out).write_text(body)
        diag = args.diagnostics or str(Path(args.out).with_suffix("")) + ".diagnostics.json"
        Path(diag).write_text(_dump(diagnostics))
    else:
        if args.diagnostics:
            Path(args.diagnostics).write_text(_dump(diagnostics))
        sys.stdout.write(body if args.format == "csv" or args.diagnostics else
                         _dump({"trajectories": json.loads(body)["trajectories"], "diagnostics": diagnostics}))


def cmd_graver(args, inst: Instance | None) -> None:
    if args.matrix is not None:
        try:
            A = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"--matrix is not JSON: {exc}") from None
    elif inst is not None:
        A = inst.data.get("graver_matrix") or (inst.data["set"].get("matrix") if inst.set_kind == "fiber" else None)
        if A is None:
            raise ValidationError("instance has no fiber matrix or graver_matrix")
    else:
        raise ValidationError("graver needs --instance or --matrix")
    if not isinstance(A, list) or not A or not all(isinstance(r, list) and r for r in A) \
            or not all(isinstance(x, int) and not isinstance(x, bool) for r in A for x in r):
        raise ValidationError("matrix must be a nonempty list of integer rows")
    G = graver_basis(A, cap=args.cap or 100_000)
    if args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(G)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dump({"matrix": A, "count": len(G), "moves": [list(g) for g in G]}), args.out)


COMMANDS = {
    "enumerate": (cmd_enumerate, "list the lattice points of the instance set", "json"),
    "graph": (cmd_graph, "export the fiber graph or compressed fiber graph", "json"),
    "analyze": (cmd_analyze, "structural and spectral report", "json"),
    "sweep": (cmd_sweep, "diameter or SLEM along a parameter grid", "csv"),
    "sample": (cmd_sample, "run the seeded heat-bath sampler", "json"),
    "graver": (cmd_graver, "Graver basis of an integer matrix", "json"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fiberwalk", description="Random walks on lattice points.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, default_format) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--instance", required=name != "graver", help="instance JSON file")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=["json", "csv", "dot"], default=default_format)
        p.add_argument("--seed", type=int, help="PRNG seed (sample)")
        p.add_argument("--steps", type=int, help="chain length (sample)")
        p.add_argument("--cap", type=int, help="resource cap (Graver size or search states)")
        if name == "graph":
            p.add_argument("--compressed", action="store_true", help="all integer multiples of moves")
        if name == "sample":
            p.add_argument("--diagnostics", help="diagnostics JSON path")
        if name == "graver":
            p.add_argument("--matrix", help='integer matrix as JSON, e.g. "[[1,1,1]]"')
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        if args.seed is not None and args.seed < 0:
            raise ValidationError("--seed must be nonnegative")
        if args.steps is not None and args.steps < 1:
            raise ValidationError("--steps must be positive")
        if args.cap is not None and args.cap < 1:
            raise ValidationError("--cap must be positive")
        inst = None
        if args.instance:
            try:
                inst = Instance.load(args.instance)
            except OSError as exc:
                raise ValidationError(f"cannot read instance: {exc}") from None
        handler(args, inst)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FiberwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception:  # noqa: BLE001 - last-resort exit code
        traceback.print_exc()
        return EXIT_INTERNAL
    return EXIT_OK

