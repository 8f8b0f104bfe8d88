"""Command-line front end: enumerate, check, dynkin-table, modules, bound.

Exit codes: 0 success, 1 I/O or parse error, 2 semantic precondition
violation.  Classification outcomes (non-reflexive input, NotCartier, a
failing bound) are ordinary output, never exit codes.
"""

from __future__ import annotations

import argparse
import os
import sys

from .enumeration import classify_classes, enumerate_reflexive
from .fano import build_report, finiteness_bound, is_locally_factorial, is_q_factorial, is_smooth
from .files import (
    FileFormatError,
    parse_polytope,
    parse_space,
    render_report,
    serialize_polytope,
)
from .roots import attachment_table, horospherical_fundamental_weights

IO_ERROR, SEMANTIC_ERROR = 1, 2


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc}", IO_ERROR))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_enumerate(args) -> int:
    try:
        space = parse_space(_read(args.space))
    except FileFormatError as exc:
        return _fail(str(exc), IO_ERROR)
    try:
        classes = enumerate_reflexive(space, box_bound=args.bound)
    except NotImplementedError as exc:
        return _fail(str(exc), SEMANTIC_ERROR)
    counts = classify_classes(space, classes)
    predicate = {
        "all": lambda p: True,
        "smooth": lambda p: is_smooth(space, p),
        "locfac": lambda p: is_locally_factorial(space, p),
        "qfact": lambda p: is_q_factorial(space, p),
    }[args.filter]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        width = max(3, len(str(counts["total"])))
        written = 0
        for idx, poly in enumerate(classes):
            if not predicate(poly):
                continue
            name = f"polytope_{idx:0{width}d}.txt"
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(serialize_polytope(poly))
            written += 1
        print(f"wrote {written} polytope files to {args.out}")
    print(
        "total={total} smooth={smooth} locfac={locfac} qfact={qfact}".format(**counts)
    )
    return 0


def cmd_check(args) -> int:
    try:
        space = parse_space(_read(args.space))
        poly = parse_polytope(_read(args.polytope))
    except FileFormatError as exc:
        return _fail(str(exc), IO_ERROR)
    if poly.n != space.n:
        return _fail(
            f"polytope dimension {poly.n} does not match space rank {space.n}",
            SEMANTIC_ERROR,
        )
    report = build_report(space, poly)
    sys.stdout.write(render_report(report))
    return 0


def cmd_dynkin_table(args) -> int:
    rows = attachment_table()
    width = max(len(label) for label, *_ in rows)
    ok = True
    for label, got, expected, match in rows:
        status = "ok" if match else "MISMATCH"
        print(
            f"{label:<{width}}  computed=({got[0]}, {got[1]})"
            f"  expected=({expected[0]}, {expected[1]})  {status}"
        )
        ok &= match
    print(f"rows = {len(rows)}  matching = {sum(1 for *_, m in rows if m)}")
    return 0 if ok else SEMANTIC_ERROR


def cmd_modules(args) -> int:
    try:
        indices = horospherical_fundamental_weights(args.type.upper(), args.rank)
    except (ValueError, KeyError) as exc:
        return _fail(str(exc), SEMANTIC_ERROR)
    if indices:
        print(" ".join(f"w{i + 1}" for i in indices))
    else:
        print("none")
    return 0


def cmd_bound(args) -> int:
    try:
        space = parse_space(_read(args.space))
    except FileFormatError as exc:
        return _fail(str(exc), IO_ERROR)
    if space.n < 1:
        return _fail("finiteness bound needs rank at least 1", SEMANTIC_ERROR)
    bound = finiteness_bound(space)
    print(f"volume_bound = {bound.volume_bound}")
    print(f"bound = {bound}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="horofan",
        description="Classify and verify Fano horospherical varieties "
        "through their reflexive polytopes and colored fans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate reflexive polytopes")
    p_enum.add_argument("space", help="space description file")
    p_enum.add_argument("--bound", type=int, default=None, help="fixed coordinate box")
    p_enum.add_argument(
        "--filter", choices=("all", "smooth", "locfac", "qfact"), default="all"
    )
    p_enum.add_argument("--out", default=None, help="directory for polytope files")
    p_enum.set_defaults(fn=cmd_enumerate)

    p_check = sub.add_parser("check", help="classify one polytope")
    p_check.add_argument("space")
    p_check.add_argument("polytope")
    p_check.set_defaults(fn=cmd_check)

    p_table = sub.add_parser("dynkin-table", help="regenerate the attachment table")
    p_table.set_defaults(fn=cmd_dynkin_table)

    p_mod = sub.add_parser("modules", help="horospherical simple modules of a type")
    p_mod.add_argument("--type", required=True, help="simple type A..G")
    p_mod.add_argument("--rank", required=True, type=int)
    p_mod.set_defaults(fn=cmd_modules)

    p_bound = sub.add_parser("bound", help="exact classification-count bound")
    p_bound.add_argument("space")
    p_bound.set_defaults(fn=cmd_bound)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else IO_ERROR
    except ValueError as exc:
        return _fail(str(exc), SEMANTIC_ERROR)


if __name__ == "__main__":
    raise SystemExit(main())
