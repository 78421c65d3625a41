"""capcolor command line: color, verify, recognize, decompose, gen, stats.

Exit codes: 0 success, 1 negative verdict, 2 usage error, 3 input parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import generators
from .coloring import STRICT_LIMIT, clique_number_c4free, color, min_degree_last_ordering
from .decomposition import clique_cutset_decompose, twin_partition
from .errors import CapColorError, GraphError, InvalidParameter, NotInClass, PartialColoring, TooLargeForStrict
from .graph import Graph, parse_dimacs, write_dimacs
from .oracles import DEFAULT_BUDGET, CapWitness, HoleWitness, check_coloring, classify_membership

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_bytes(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str | None) -> Graph:
    try:
        return parse_dimacs(_read_bytes(path))
    except GraphError as exc:
        raise InputError(f"{path or '<stdin>'}: {exc}") from None


def _emit(data: str | bytes, path: str | None) -> None:
    """Write the whole output in one go; files are replaced atomically."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".capcolor-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _witness_json(w) -> dict | None:
    if isinstance(w, HoleWitness):
        return {"type": "even_hole", "cycle": list(w.cycle)}
    if isinstance(w, CapWitness):
        return {"type": "cap", "hole": list(w.hole.cycle), "apex": w.apex}
    return None


# -- subcommands ---------------------------------------------------------

def cmd_color(args) -> int:
    g = _read_graph(args.input)
    try:
        report = color(g, mode=args.mode, budget=args.budget)
    except NotInClass as exc:
        print(f"not (even-hole, cap)-free: {exc}", file=sys.stderr)
        print(_dumps({"error": "not_in_class", "witness": _witness_json(exc.witness)}), end="", file=sys.stderr)
        return EXIT_NEGATIVE
    except TooLargeForStrict as exc:
        print(f"strict mode refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        _emit(_dumps(report.to_json()), args.output)
    else:
        colors = report.coloring.as_list(g.n)
        _emit(_dumps({"colors": colors, "k": report.colors_used}), args.output)
        ratio = report.ratio if report.ratio is not None else "n/a"
        print(f"colors={report.colors_used} omega={report.omega_estimate} "
              f"bound={report.bound} ratio={ratio}", file=sys.stderr)
        if report.class_violation:
            print(f"warning: {report.class_violation}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    try:
        data = json.loads(_read_bytes(args.coloring))
    except (ValueError, UnicodeDecodeError) as exc:
        raise InputError(f"{args.coloring}: invalid JSON ({exc})") from None
    colors = data.get("colors", data.get("coloring")) if isinstance(data, dict) else data
    if not isinstance(colors, list) or not all(isinstance(c, int) for c in colors):
        raise InputError(f"{args.coloring}: expected an integer array under 'colors'")
    try:
        proper = check_coloring(g, colors)
    except PartialColoring as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    k = data.get("k") if isinstance(data, dict) else None
    if k is not None and any(not 0 <= c < k for c in colors):
        print(f"invalid: colors outside 0..{k - 1}", file=sys.stderr)
        return EXIT_NEGATIVE
    used = len(set(colors))
    verdict = {"proper": proper, "colors_used": used}
    if args.json:
        _emit(_dumps(verdict), args.output)
    else:
        _emit(f"{'proper' if proper else 'improper'} coloring with {used} colors\n", args.output)
    return EXIT_OK if proper else EXIT_NEGATIVE


def cmd_recognize(args) -> int:
    g = _read_graph(args.input)
    report = classify_membership(g, args.budget)
    witness = report.witness
    if args.json:
        _emit(_dumps({
            "in_class": report.in_class,
            "search_exhausted": report.search_exhausted,
            "even_hole": list(report.even_hole.cycle) if report.even_hole else None,
            "cap": _witness_json(report.cap),
        }), args.output)
    else:
        if report.in_class:
            line = "in class: no even hole, no cap"
        elif isinstance(witness, HoleWitness):
            line = f"not in class: even hole of length {len(witness)}: {list(witness.cycle)}"
        elif isinstance(witness, CapWitness):
            line = f"not in class: cap with hole {list(witness.hole.cycle)} and apex {witness.apex}"
        else:
            line = "undecided: search budget exhausted"
        _emit(line + "\n", args.output)
    return EXIT_OK if report.in_class else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    g = _read_graph(args.input)
    tree = clique_cutset_decompose(g)
    if args.json:
        _emit(_dumps(tree.to_json()), args.output)
    else:
        _emit(tree.to_text() + "\n", args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    fam = args.family

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise InvalidParameter(f"family {fam!r} requires --{name}")
        return value

    if fam == "cycle":
        g = generators.cycle(need("n"))
    elif fam == "complete":
        g = generators.complete(need("n"))
    elif fam == "hajos":
        g = generators.hajos()
    elif fam == "gk":
        g = generators.c5_clique_blowup(need("k"))
    elif fam == "blowup":
        sizes = [int(s) for s in need("sizes").split(",")]
        g = generators.blowup(generators.cycle(len(sizes)), sizes)
    elif fam == "random_chordal":
        g = generators.random_chordal(need("n"), args.seed, args.max_attach)
    else:
        g = generators.random_in_class(need("n"), need("p"), args.seed, args.max_tries, args.budget)
        if g is None:
            print(f"no in-class graph found in {args.max_tries} tries", file=sys.stderr)
            return EXIT_NEGATIVE
    _emit(write_dimacs(g), args.output)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _read_graph(args.input)
    omega, exact = clique_number_c4free(g)
    stats = {
        "n": g.n,
        "m": g.m,
        "twin_classes": len(twin_partition(g).classes),
        "atoms": len(clique_cutset_decompose(g).leaves()),
        "beta": min_degree_last_ordering(g).beta_value,
        "omega": omega,
        "omega_exact": exact,
    }
    if args.json:
        _emit(_dumps(stats), args.output)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in stats.items()), args.output)
    return EXIT_OK


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="capcolor", description="Color (even-hole, cap)-free graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, positional_input=True):
        if positional_input:
            p.add_argument("source", nargs="?", help="DIMACS input file (default: stdin)")
            p.add_argument("-i", "--input", help="DIMACS input file")
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle node-expansion budget")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("color", help="color a graph and report against floor(3/2 omega)")
    common(p)
    p.add_argument("--mode", choices=("strict", "permissive"), default="permissive",
                   help=f"strict verifies membership first (n <= {STRICT_LIMIT})")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="check that a coloring file is proper for a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    common(p, positional_input=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recognize", help="brute-force (even-hole, cap)-freeness check")
    common(p)
    p.add_argument("--expect-in-class", action="store_true",
                   help="exit 1 unless the graph is in class (this is also the default)")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("decompose", help="print the clique-cutset decomposition tree")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen", help="generate an instance as canonical DIMACS")
    p.add_argument("family", choices=generators.FAMILIES)
    common(p, positional_input=False)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--sizes", help="comma-separated clique sizes for blowup of a cycle")
    p.add_argument("--max-tries", type=int, default=100)
    p.add_argument("--max-attach", type=int, default=20)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="n, m, twin classes, atoms, beta, omega")
    common(p)
    p.set_defaults(func=cmd_stats)
    return parser


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "source", None) is not None:
        if args.input is not None:
            print("capcolor: give the input either positionally or with --input", file=sys.stderr)
            return EXIT_USAGE
        args.input = args.source
    try:
        return args.func(args)
    except InputError as exc:
        print(f"capcolor: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidParameter as exc:
        print(f"capcolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapColorError as exc:
        print(f"capcolor: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def main() -> None:
    sys.exit(dispatch())
