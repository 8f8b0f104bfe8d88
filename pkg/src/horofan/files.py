"""Text file formats for spaces, polytopes, and classification reports.

Line-oriented key = value files; rationals are written "p/q" (or "p") so
nothing is ever rounded.  parse ∘ serialize is the identity on normalized
files, which makes golden-file testing trivial.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .fano import BoundCheck, FanoReport
from .linalg import format_rational, parse_rational
from .polytopes import Polytope
from .roots import RootSystem, Weight
from .spaces import HoroSpace


class FileFormatError(ValueError):
    """Malformed input file; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def _key_value_lines(text: str) -> dict[str, tuple[str, int]]:
    out: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FileFormatError(f"expected 'key = value', got {raw!r}", lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if key in out:
            raise FileFormatError(f"duplicate key {key!r}", lineno)
        out[key] = (value.strip(), lineno)
    return out


# -- space files -----------------------------------------------------------------


def parse_space(text: str) -> HoroSpace:
    """Parse a space description: factors, torus rank, I, and the M basis."""
    fields = _key_value_lines(text)
    for required in ("factors", "torus_rank", "I", "M_basis"):
        if required not in fields:
            raise FileFormatError(f"missing key {required!r}")
    factors_raw, factors_line = fields["factors"]
    factors = []
    for token in factors_raw.split():
        typ, rank_str = token[0].upper(), token[1:]
        if not rank_str.isdigit():
            raise FileFormatError(f"bad factor token {token!r}", factors_line)
        factors.append((typ, int(rank_str)))
    torus_raw, torus_line = fields["torus_rank"]
    try:
        torus_rank = int(torus_raw)
    except ValueError:
        raise FileFormatError(f"bad torus rank {torus_raw!r}", torus_line) from None
    try:
        rs = RootSystem(factors, torus_rank)
    except ValueError as exc:
        raise FileFormatError(str(exc), factors_line) from None

    I_raw, I_line = fields["I"]
    I = []
    for token in I_raw.split():
        if not token.isdigit() or int(token) < 1:
            raise FileFormatError(f"I entries are 1-based indices, got {token!r}", I_line)
        I.append(int(token) - 1)
    if any(i >= rs.s for i in I):
        raise FileFormatError(f"I index out of range (s = {rs.s})", I_line)

    basis_raw, basis_line = fields["M_basis"]
    rows = [r.strip() for r in basis_raw.split(";")] if basis_raw else []
    weights = []
    for row in rows:
        entries = row.split()
        if len(entries) != rs.s + rs.torus_rank:
            raise FileFormatError(
                f"M basis row needs {rs.s + rs.torus_rank} entries, got {len(entries)}",
                basis_line,
            )
        values = []
        for e in entries:
            try:
                v = parse_rational(e)
            except ValueError:
                raise FileFormatError(f"bad rational {e!r}", basis_line) from None
            if v.denominator != 1:
                raise FileFormatError(
                    f"M basis entries must be integers, got {e!r}", basis_line
                )
            values.append(int(v))
        weights.append(Weight(tuple(values[: rs.s]), tuple(values[rs.s :])))
    try:
        return HoroSpace(rs, I, weights)
    except ValueError as exc:
        raise FileFormatError(str(exc), basis_line) from None


def serialize_space(space: HoroSpace) -> str:
    factors = " ".join(f"{t}{r}" for t, r in space.rs.factors)
    I = " ".join(str(i + 1) for i in sorted(space.I))
    rows = " ; ".join(
        " ".join(str(x) for x in list(mu.fund) + list(mu.torus))
        for mu in space.M_basis
    )
    return (
        f"factors = {factors}\n"
        f"torus_rank = {space.rs.torus_rank}\n"
        f"I = {I}\n"
        f"M_basis = {rows}\n"
    )


# -- polytope files ----------------------------------------------------------------


def parse_polytope(text: str) -> Polytope:
    fields = _key_value_lines(text)
    if "vertices" not in fields:
        raise FileFormatError("missing key 'vertices'")
    raw, line = fields["vertices"]
    rows = [r.strip() for r in raw.split(";") if r.strip()]
    if not rows:
        raise FileFormatError("empty vertex list", line)
    points = []
    for row in rows:
        try:
            points.append(tuple(parse_rational(e) for e in row.split()))
        except ValueError:
            raise FileFormatError(f"bad vertex row {row!r}", line) from None
    if len({len(p) for p in points}) != 1:
        raise FileFormatError("vertex rows of mixed dimension", line)
    try:
        return Polytope.hull(points)
    except ValueError as exc:
        raise FileFormatError(str(exc), line) from None


def serialize_polytope(poly: Polytope) -> str:
    rows = " ; ".join(
        " ".join(format_rational(x) for x in v) for v in poly.vertices
    )
    return f"vertices = {rows}\n"


# -- reports -----------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def render_report(report: FanoReport) -> str:
    """Line-oriented key = value rendering plus a machine-readable block."""
    lines = [
        f"reflexive = {_fmt(report.reflexive)}",
        f"q_reflexive = {_fmt(report.q_reflexive)}",
        f"locally_factorial = {_fmt(report.locally_factorial)}",
        f"smooth = {_fmt(report.smooth)}",
        f"q_factorial = {_fmt(report.q_factorial)}",
    ]
    if report.degree is not None:
        lines.append(f"degree = {report.degree}")
        lines.append(f"degree_scale = {report.degree_scale}")
    if report.picard is not None:
        lines.append(f"picard = {report.picard}")
    if report.very_ample_anticanonical is not None:
        lines.append(f"very_ample_anticanonical = {_fmt(report.very_ample_anticanonical)}")
    for check in report.bound_checks:
        status = "satisfied" if check.satisfied else "VIOLATED"
        lines.append(
            f"bound {check.name} = {status} lhs={_fmt(check.lhs)} rhs={_fmt(check.rhs)}"
        )
    lines.append("--- json ---")
    lines.append(json.dumps(report_as_dict(report), sort_keys=True))
    return "\n".join(lines) + "\n"


def report_as_dict(report: FanoReport) -> dict:
    def enc(v):
        if v is None or isinstance(v, (bool, int)):
            return v
        return _fmt(v)

    return {
        "reflexive": report.reflexive,
        "q_reflexive": report.q_reflexive,
        "locally_factorial": report.locally_factorial,
        "smooth": report.smooth,
        "q_factorial": report.q_factorial,
        "degree": report.degree,
        "degree_scale": report.degree_scale,
        "picard": report.picard,
        "very_ample_anticanonical": report.very_ample_anticanonical,
        "bound_checks": [
            {
                "name": c.name,
                "satisfied": c.satisfied,
                "lhs": enc(c.lhs),
                "rhs": enc(c.rhs),
            }
            for c in report.bound_checks
        ],
    }
