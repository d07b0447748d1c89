"""Command-line interface.

Exit codes: 0 success or all checks passed, 1 validation or check failure,
2 usage error. The SQFT_SEED environment variable overrides the default
check seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from math import comb
from pathlib import Path

from . import census, formats
from .engine import (
    apply_script_to_sutures, compile_script, compiled_operator, element_trace,
    naturality_holds, suture_element,
)
from .quad import diagonal_slide
from .regions import euler_class, regions
from .surface import invariants, validate_complex
from .sutures import bypass_surgery, bypass_triples, validate_sutures
from .svg import render_svg
from .tensor import gf2_rank, is_homogeneous


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_surface(path: str):
    return formats.parse_surface(_read(path))


def cmd_validate(args) -> int:
    c = _load_surface(args.surface)
    report = validate_complex(c)
    problems = list(report.problems)
    if args.sutures:
        g = formats.parse_sutures(_read(args.sutures), c.square_count)
        problems += list(validate_sutures(c, g).problems)
    if problems:
        for p in problems:
            print(f"invalid: {p}")
        return 1
    print("valid")
    return 0


def cmd_info(args) -> int:
    c = _load_surface(args.surface)
    inv = invariants(c)
    print(f"squares            {inv.square_count}")
    print(f"N (vertex pairs)   {inv.n}")
    print(f"euler chi          {inv.chi}")
    print(f"boundary circles   {inv.boundary_components}")
    print(f"components         {inv.components}")
    print(f"genus              {inv.genus}")
    print(f"index              {inv.index}")
    print(f"gluing number      {inv.gluing_number}")
    print(f"internal vertices  {len(c.internal_vertices())}")
    return 0


def cmd_element(args) -> int:
    c = _load_surface(args.surface)
    g = formats.parse_sutures(_read(args.sutures), c.square_count)
    report = validate_sutures(c, g)
    if not report.ok:
        for p in report.problems:
            print(f"invalid: {p}")
        return 1
    if args.trace:
        elem, lines = element_trace(c, g)
        for line in lines:
            print(line)
    else:
        elem = suture_element(c, g)
    e = euler_class(c, g)
    words = elem.word_strings()
    print(f"euler class {e}")
    print("element " + (" + ".join(words) if words else "0"))
    return 0


def cmd_apply(args) -> int:
    script = formats.parse_script(_read(args.script))
    compiled = compile_script(script)
    lin, fact = compiled_operator(compiled)
    print(f"target surface: {compiled.target.square_count} squares, "
          f"{len(compiled.target.gluings)} internal edges")
    if args.factorize:
        print("factorization:")
        for op in fact.ops:
            acted = f" acting on {list(op.acted)}" if op.acted else ""
            print(f"  {op.kind} factor {op.factor} "
                  f"({op.arity_in}->{op.arity_out}){acted}")
        if not fact.ops:
            print("  identity")
    if args.sutures:
        src = script.source
        g = formats.parse_sutures(_read(args.sutures), src.square_count)
        target, out = apply_script_to_sutures(script, g)
        elem = lin(suture_element(src, g))
        print("image sutures:")
        sys.stdout.write(formats.emit_sutures(out))
        words = elem.word_strings()
        print("image element " + (" + ".join(words) if words else "0"))
    return 0


def cmd_slide(args) -> int:
    c = _load_surface(args.surface)
    edges = c.sorted_gluings()
    if not 0 <= args.edge < len(edges):
        print(f"no internal edge {args.edge} (have {len(edges)})")
        return 1
    out, record = diagonal_slide(c, edges[args.edge], args.dir)
    sys.stdout.write(formats.emit_surface(out))
    print(f"slide {record.direction}: removed {record.removed_edge}, "
          f"added {record.added_edge}", file=sys.stderr)
    return 0


def cmd_census(args) -> int:
    if args.family != "disc":
        print("only the disc family is enumerated")
        return 2
    c = census.disc_complex(args.n)
    systems = census.enumerate_disc_sutures(args.n)
    print(f"disc with {2 * args.n} vertices: {len(systems)} suture classes "
          f"(catalan {census.catalan(args.n)})")
    tally: dict[int, int] = {}
    for s in systems:
        tally[euler_class(c, s)] = tally.get(euler_class(c, s), 0) + 1
    for e in sorted(tally):
        print(f"  euler class {e:+d}: {tally[e]} classes")
    return 0


def cmd_render(args) -> int:
    c = _load_surface(args.surface)
    g = None
    if args.sutures:
        g = formats.parse_sutures(_read(args.sutures), c.square_count)
    Path(args.output).write_text(render_svg(c, g))
    print(f"wrote {args.output}")
    return 0


# -- check suites -----------------------------------------------------------


def _random_pairs(seed: int, cases: int, max_squares: int = 6):
    made = 0
    attempt = 0
    while made < cases:
        script = census.random_surface(seed + attempt, max_squares)
        attempt += 1
        c = compile_script(script).target
        if c.square_count == 0:
            continue
        g = census.random_sutures(seed + attempt, c)
        made += 1
        yield c, g


def check_bypass(seed: int, cases: int) -> list[str]:
    fails = []
    for i, (c, g) in enumerate(_random_pairs(seed, cases)):
        el = suture_element(c, g)
        for edge, t in bypass_triples(c, g):
            up = suture_element(c, bypass_surgery(c, g, edge, t, "up"))
            down = suture_element(c, bypass_surgery(c, g, edge, t, "down"))
            if (el + up + down).words:
                fails.append(f"case {i}: triple {edge},{t} does not cancel")
    return fails


def check_euler(seed: int, cases: int) -> list[str]:
    fails = []
    for i, (c, g) in enumerate(_random_pairs(seed, cases)):
        inv = invariants(c)
        dec = regions(c, g)
        e = dec.chi_plus - dec.chi_minus
        if 2 * dec.chi_plus != inv.n + inv.chi + e:
            fails.append(f"case {i}: chi+ identity fails")
        if 2 * dec.chi_minus != inv.n + inv.chi - e:
            fails.append(f"case {i}: chi- identity fails")
        if not (-inv.index <= e <= inv.index) or (e - inv.index) % 2:
            fails.append(f"case {i}: euler bound fails")
        el = suture_element(c, g)
        if not is_homogeneous(el, e):
            fails.append(f"case {i}: element not homogeneous")
    return fails


def check_naturality(seed: int, cases: int) -> list[str]:
    fails = []
    for i in range(cases):
        script = census.random_surface(seed + i, 6)
        compiled = compile_script(script)
        lin, fact = compiled_operator(compiled)
        src = script.source
        for bits in range(1 << src.square_count):
            if not naturality_holds(script, bits):
                fails.append(f"case {i}: naturality fails at word {bits}")
    return fails


def check_census(seed: int, cases: int) -> list[str]:
    fails = []
    top = min(6, max(3, 2 + cases // 40))
    for n in range(2, top + 1):
        c = census.disc_complex(n)
        systems = census.enumerate_disc_sutures(n)
        if len(set(systems)) != census.catalan(n):
            fails.append(f"disc n={n}: class count != catalan")
            continue
        by_grade: dict[int, list[int]] = {}
        for s in systems:
            el = suture_element(c, s)
            by_grade.setdefault(euler_class(c, s), []).append(
                sum(1 << w for w in el.words))
        for e, rows in by_grade.items():
            if gf2_rank(rows) != comb(n - 1, (n - 1 + e) // 2):
                fails.append(f"disc n={n}: rank at grade {e} wrong")
    return fails


SUITES = {
    "bypass": check_bypass,
    "euler": check_euler,
    "naturality": check_naturality,
    "census": check_census,
}


def cmd_check(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("SQFT_SEED", "0"))
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        fails = SUITES[name](seed, args.cases)
        status = "pass" if not fails else "FAIL"
        print(f"{name:<12} {status}")
        for f in fails[:10]:
            print(f"    {f}")
        failed = failed or bool(fails)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sqft",
        description="Signed quadrangulated surfaces, sutures, and their "
                    "GF(2) tensor calculus.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a surface (and sutures)")
    p.add_argument("surface")
    p.add_argument("sutures", nargs="?")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("info", help="invariants of a surface")
    p.add_argument("surface")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("element", help="suture element of a curve system")
    p.add_argument("surface")
    p.add_argument("sutures")
    p.add_argument("--trace", action="store_true",
                   help="print the bypass recursion tree")
    p.set_defaults(fn=cmd_element)

    p = sub.add_parser("apply", help="run a script; optionally push sutures")
    p.add_argument("script")
    p.add_argument("sutures", nargs="?")
    p.add_argument("--factorize", action="store_true",
                   help="print the creation/annihilation factorization")
    p.set_defaults(fn=cmd_apply)

    p = sub.add_parser("slide", help="diagonal slide at an internal edge")
    p.add_argument("surface")
    p.add_argument("--edge", type=int, required=True,
                   help="index into the sorted internal edges")
    p.add_argument("--dir", choices=("ccw", "cw"), default="ccw")
    p.set_defaults(fn=cmd_slide)

    p = sub.add_parser("census", help="enumerate suture classes")
    p.add_argument("family", choices=("disc",))
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("check", help="run property suites")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cases", type=int, default=25)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("render", help="draw a surface (and sutures) as SVG")
    p.add_argument("surface")
    p.add_argument("sutures", nargs="?")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (formats.ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
