"""Command-line interface: ``gridkh <subcommand> --grid "n=..; X=..; O=.."``."""

from __future__ import annotations

import argparse
import json
import sys

from .figure_eights import HIGH, LOW, enumerate_generators
from .gradings import Grader
from .grid import GridDiagram, GridError, parse_grid
from .jones import ROUTES, component_sign
from .khovanov import build_complex, format_homology, homology
from .reduction import AVERAGE, SINGLE, RingMismatch, reduce
from .states import StateModel
from .verify import DEFAULT_CAP, TooLarge, state_count, verify_suite

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


def _homology_records(h: dict) -> list[dict]:
    return [{"i": i, "j": j, "free": free, "torsion": tors} for (i, j), (free, tors) in sorted(h.items())]


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_info(args, grid: GridDiagram) -> int:
    model = StateModel(grid, args.waist)
    data = model.rd.data
    payload = {
        "diagram": grid.to_text(),
        "size": grid.size,
        "crossings": [{"column": x.column, "row": x.row, "sign": x.sign} for x in data.crossings],
        "n_plus": data.n_plus,
        "n_minus": data.n_minus,
        "writhe": data.writhe,
        "rot": data.rot,
        "components": data.components,
        "seifert_circles": data.seifert_circles,
    }
    lines = [f"diagram: {grid.to_text()}"]
    lines += [f"{k}: {payload[k]}" for k in ("size", "n_plus", "n_minus", "writhe", "rot", "components",
                                             "seifert_circles")]
    lines.append("crossings: " + ", ".join(f"({x.column}, {x.row}) {'+' if x.sign > 0 else '-'}"
                                           for x in data.crossings))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_generators(args, grid: GridDiagram) -> int:
    model = StateModel(grid, args.waist)
    grader = Grader(model)
    records = []
    lines = [f"{'generator':<40} {'P':>4} {'J':>4} {'T':>4} {'Q':>4} {'j1':>4} {'j2':>4} {'j3':>4}"]
    for g in enumerate_generators(model.fe):
        gg = grader.graded(g)
        aux = grader.auxiliary(g)
        records.append({"points": g.to_list(), "P": gg.P, "J": gg.J, "T": gg.T, "Q": gg.Q,
                        "j1": aux.j1, "j2": aux.j2, "j3": aux.j3})
        lines.append(f"{str(g):<40} {gg.P:>4} {gg.J:>4} {gg.T:>4} {gg.Q:>4} {aux.j1:>4} {aux.j2:>4} {aux.j3:>4}")
    _emit(args, {"diagram": grid.to_text(), "waist": args.waist, "generators": records}, lines)
    return EXIT_OK


def cmd_jones(args, grid: GridDiagram) -> int:
    model = StateModel(grid, args.waist)
    if args.route != "bigelow":
        state_count(model, args.cap)
    routes = list(ROUTES) if args.route == "all" else [args.route]
    sign = component_sign(model)
    values = {}
    for name in routes:
        if name == "euler":
            values[name] = ROUTES[name](model, ring=args.ring, mode=args.homotopy)
        else:
            values[name] = ROUTES[name](model)
    payload = {"diagram": grid.to_text(), "component_sign": sign, "routes": {}}
    lines = [f"diagram: {grid.to_text()}", f"component sign: {sign:+d}"]
    for name, v in values.items():
        payload["routes"][name] = {"raw": v.to_json(), "signed": (sign * v).to_json()}
        lines.append(f"{name}: {v}    (times component sign: {sign * v})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_khovanov(args, grid: GridDiagram) -> int:
    model = StateModel(grid, args.waist)
    state_count(model, args.cap)
    h = homology(build_complex(model), args.ring)
    _emit(args, {"diagram": grid.to_text(), "ring": args.ring, "homology": _homology_records(h)},
          [f"Khovanov homology over {args.ring}", *format_homology(h)])
    return EXIT_OK


def cmd_reduce(args, grid: GridDiagram) -> int:
    model = StateModel(grid, args.waist)
    state_count(model, args.cap)
    red = reduce(grid, ring=args.ring, mode=args.homotopy, model=model)
    c = red.complex
    h = homology(c, args.ring)
    entries = [{"source": str(c.labels[s]), "target": str(c.labels[t]), "coefficient": str(v)}
               for (t, s), v in sorted(red.complex.d.entries.items())]
    payload = {
        "diagram": grid.to_text(),
        "ring": args.ring,
        "homotopy": args.homotopy,
        "generators": [{"points": g.to_list(), "i": i, "j": j} for g, i, j in zip(c.labels, c.i, c.j)],
        "differential": entries,
        "homology": _homology_records(h),
    }
    lines = [f"reduced complex: {len(c)} generators, {len(entries)} nonzero entries"]
    lines += [f"  {g}  (i, j) = ({i}, {j})" for g, i, j in zip(c.labels, c.i, c.j)]
    lines += [f"  d {e['source']} -> {e['target']}: {e['coefficient']}" for e in entries]
    lines += [f"homology over {args.ring}", *format_homology(h)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args, grid: GridDiagram) -> int:
    report = verify_suite(grid, waist=args.waist, ring=args.ring, mode=args.homotopy, cap=args.cap)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {
    "info": cmd_info,
    "generators": cmd_generators,
    "jones": cmd_jones,
    "khovanov": cmd_khovanov,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def _common_flags(top: bool) -> argparse.ArgumentParser:
    """Shared flags; on subcommands they are suppressed unless given so they do not mask top-level values."""

    def default(value):
        return value if top else argparse.SUPPRESS

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--grid", default=default(None), help='grid as "n=5; X=3,4,5,1,2; O=1,2,3,4,5" or JSON')
    src.add_argument("--file", default=default(None), help="file holding a grid in either format")
    common.add_argument("--format", choices=("text", "json"), default=default("text"))
    common.add_argument("--waist", choices=(HIGH, LOW), default=default(HIGH))
    common.add_argument("--ring", choices=("z", "q", "Z", "Q"), default=default("z"))
    common.add_argument("--homotopy", choices=(SINGLE, AVERAGE), default=default(SINGLE))
    common.add_argument("--cap", type=int, default=default(DEFAULT_CAP), help="largest allowed state count bound")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridkh", description=__doc__, parents=[_common_flags(True)])
    sub = parser.add_subparsers(dest="command", required=True)
    local = _common_flags(False)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[local])
        if name == "jones":
            p.add_argument("--route", choices=("all", *ROUTES), default="all")
    return parser


def _read_grid(args) -> GridDiagram:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return parse_grid(fh.read())
    if args.grid:
        return parse_grid(args.grid)
    raise GridError("give a diagram with --grid or --file")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    args.ring = args.ring.upper()
    try:
        grid = _read_grid(args)
        if args.homotopy == AVERAGE and args.ring != "Q":
            raise RingMismatch("--homotopy average needs --ring q")
        return COMMANDS[args.command](args, grid)
    except (GridError, RingMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
