"""Command-line entry point.

Exit status is 0 on success, 1 when the input is well formed but outside the
scope of the requested operation (a reflective design, a species that cannot
be put on a cube, an odd torus to halve) and 2 for malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .construct import enumerate_designs
from .cube import CubeError, cube_net, cube_weavable, verify_cube
from .io import DesignFormatError, dump_catalog, format_design, load_design
from .lattice import iter_table, sum_of_squares_array
from .render import RenderSpec, ascii_art, render_net_svg, render_svg
from .symmetry import Rejection, Species, classify
from .transform import double, halve

OK, REJECTED, MALFORMED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _out(text: str, path: Optional[str]) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args) -> int:
    d = load_design(args.file)
    r = classify(d)
    if args.json:
        print(json.dumps(r.as_dict(), sort_keys=True))
    else:
        for k, v in r.as_dict().items():
            print(f"{k}\t{v}")
    return OK


def _cmd_enumerate(args) -> int:
    species = [Species.parse(s) for s in args.species] if args.species else None
    e = enumerate_designs(args.order, species_filter=species, include_falling_apart=args.include_falling_apart)
    text = dump_catalog(e, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if e.notice:
        print(e.notice, file=sys.stderr)
    return OK


def _cmd_double(args) -> int:
    _out(format_design(double(load_design(args.file))), args.out)
    return OK


def _cmd_halve(args) -> int:
    d = load_design(args.file)
    if d.torus_side % 2:
        print(f"error: cannot halve a design on an odd torus (T={d.torus_side})", file=sys.stderr)
        return REJECTED
    _out(format_design(halve(d, (args.a, args.b))), args.out)
    return OK


def _cmd_cube(args) -> int:
    d = load_design(args.file)
    r = classify(d)
    v = cube_weavable(r)
    if args.action == "check":
        print(json.dumps({"species": r.species.value, "cube_weavable": v.verdict, "reason": v.reason}, sort_keys=True))
        return OK if v.verdict else REJECTED
    net = cube_net(d, r)
    ver = verify_cube(net)
    if args.svg:
        Path(args.svg).write_text(render_net_svg(net, args.cell_size))
    print(json.dumps({
        "species": r.species.value,
        "strands": len(ver.strands),
        "orbits": len(ver.orbits),
        "isonemal": ver.isonemal,
    }, sort_keys=True))
    return OK if ver.isonemal else REJECTED


def _array_lines(title: str, size: int, keep_inadmissible: bool) -> List[str]:
    grid = [[""] * size for _ in range(size)]
    for e in sum_of_squares_array(size):
        if e.admissible or keep_inadmissible:
            grid[e.i - 1][e.j - 1] = f"{e.M * e.M}+{e.N * e.N}"
    return [title] + ["\t".join(row).rstrip("\t") for row in grid]


def _cmd_lattice(args) -> int:
    lines = ["area\tM\tN\tadmissible\treason"]
    for area, M, N, ok, reason in iter_table(args.max_area):
        lines.append(f"{area}\t{M}\t{N}\t{'Y' if ok else 'N'}\t{reason}")
    if args.array:
        lines += [""] + _array_lines("# all level-1 squares", 8, True) + [""] + _array_lines("# admissible squares", 8, False)
    print("\n".join(lines))
    return OK


def _cmd_render(args) -> int:
    d = load_design(args.file)
    if args.ascii:
        _out(ascii_art(d), args.out)
        return OK
    spec = RenderSpec(args.cell_size, show_markers=not args.no_markers, show_lattice=not args.no_lattice)
    _out(render_svg(d, spec), args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isoweave", description="Isonemal weaving designs with quarter-turn symmetry.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="species of a design")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_classify)

    e = sub.add_parser("enumerate", help="all designs of one order")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--species", action="append", metavar="S")
    e.add_argument("--include-falling-apart", action="store_true")
    e.add_argument("--out", metavar="catalog.json")
    e.set_defaults(func=_cmd_enumerate)

    d = sub.add_parser("double", help="double every strand")
    d.add_argument("file")
    d.add_argument("--out")
    d.set_defaults(func=_cmd_double)

    h = sub.add_parser("halve", help="keep every other strand")
    h.add_argument("file")
    h.add_argument("--a", type=int, choices=(0, 1), default=0)
    h.add_argument("--b", type=int, choices=(0, 1), default=0)
    h.add_argument("--out")
    h.set_defaults(func=_cmd_halve)

    k = sub.add_parser("cube", help="weaving on a cube")
    k.add_argument("action", choices=("check", "net"))
    k.add_argument("file")
    k.add_argument("--svg", metavar="out.svg")
    k.add_argument("--cell-size", type=int, default=12)
    k.set_defaults(func=_cmd_cube)

    t = sub.add_parser("lattice", help="lattice-unit tables")
    t.add_argument("action", choices=("table",))
    t.add_argument("--max-area", type=int, default=337)
    t.add_argument("--array", action="store_true", help="also print the 8x8 arrays of sums of squares")
    t.set_defaults(func=_cmd_lattice)

    r = sub.add_parser("render", help="draw a design")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--cell-size", type=int, default=20)
    r.add_argument("--no-markers", action="store_true")
    r.add_argument("--no-lattice", action="store_true")
    r.add_argument("--ascii", action="store_true")
    r.set_defaults(func=_cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return MALFORMED
    except (DesignFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED
    except (Rejection, CubeError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return REJECTED
    except ValueError as exc:
        # bad species names, cell sizes and similar option values
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
