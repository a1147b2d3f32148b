"""Digraph text format, DOT export, embedded cages and report rendering.

Text format::

    n 3
    0: 1
    1: 2
    2: 0

Line ``i + 2`` lists the out-neighbours of vertex ``i`` in strictly
ascending order; the list after the colon may be empty.
"""

from __future__ import annotations

import json
import re

from .audit import AuditVerdict, status_counts
from .digraph import Digraph
from .moore import MooreReport

__all__ = [
    "ParseError",
    "parse_digraph",
    "emit_digraph",
    "export_dot",
    "embedded_cages",
    "LEFT_CAGE",
    "RIGHT_CAGE",
    "report_document",
    "render_text",
    "render_json",
]

# (2,2)-geodetic cages of order 9, transcribed arc by arc.
LEFT_CAGE = Digraph.from_lists(
    [[1, 2], [3, 4], [5, 6], [2, 7], [5, 6], [0, 8], [1, 7], [0, 8], [3, 4]]
)
RIGHT_CAGE = Digraph.from_lists(
    [[1, 2], [3, 4], [5, 6], [0, 8], [5, 7], [1, 8], [0, 4], [2, 3], [6, 7]]
)


def embedded_cages() -> tuple[Digraph, Digraph]:
    return LEFT_CAGE, RIGHT_CAGE


class ParseError(ValueError):
    def __init__(self, line: int, kind: str, message: str) -> None:
        super().__init__(f"line {line}: {kind}: {message}")
        self.line = line
        self.kind = kind


_HEADER = re.compile(r"n (\d+)")
_ROW = re.compile(r"(\d+):((?: \d+)*)")


def parse_digraph(text: str) -> Digraph:
    """Parse the text format; the first problem found is raised as ``ParseError``."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError(1, "syntax", "empty input")
    m = _HEADER.fullmatch(lines[0].rstrip("\r"))
    if not m:
        raise ParseError(1, "syntax", f"expected 'n <count>', got {lines[0]!r}")
    n = int(m.group(1))
    if len(lines) - 1 < n:
        raise ParseError(len(lines) + 1, "syntax", f"expected {n} vertex lines, got {len(lines) - 1}")
    if len(lines) - 1 > n:
        raise ParseError(n + 2, "syntax", "unexpected content after the last vertex line")
    rows = []
    for i in range(n):
        lineno = i + 2
        raw = lines[i + 1].rstrip("\r")
        m = _ROW.fullmatch(raw)
        if not m:
            raise ParseError(lineno, "syntax", f"expected '{i}: <out-neighbours>', got {raw!r}")
        if int(m.group(1)) != i:
            raise ParseError(lineno, "syntax", f"expected vertex {i}, got {m.group(1)}")
        targets = [int(t) for t in m.group(2).split()]
        for pos, t in enumerate(targets):
            if t >= n:
                raise ParseError(lineno, "range", f"out-neighbour {t} not in [0, {n})")
            if t == i:
                raise ParseError(lineno, "loop", f"vertex {i} lists itself")
            if t in targets[:pos]:
                raise ParseError(lineno, "duplicate-arc", f"arc {i}->{t} listed twice")
            if pos and t < targets[pos - 1]:
                raise ParseError(lineno, "syntax", "out-neighbours must be in ascending order")
        rows.append(tuple(targets))
    return Digraph(n, tuple(rows))


def emit_digraph(g: Digraph) -> str:
    lines = [f"n {g.n}"]
    for u, row in enumerate(g.out):
        lines.append(f"{u}:" + "".join(f" {v}" for v in row))
    return "\n".join(lines) + "\n"


def export_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {u};" for u in range(g.n)]
    lines += [f"  {u} -> {v};" for u, v in sorted(g.arcs())]
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_document(
    g: Digraph, report: MooreReport, verdicts: list[AuditVerdict] | None = None
) -> dict:
    """Structured report with a fixed field order."""
    doc = {
        "order": g.n,
        "arcs": g.arc_count,
        "moore": report.to_dict(),
    }
    if verdicts is not None:
        doc["audit_summary"] = status_counts(verdicts)
        doc["audits"] = [v.to_dict() for v in verdicts]
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    return str(value)


def render_text(doc: dict) -> str:
    lines = [f"order={doc['order']}", f"arcs={doc['arcs']}"]
    moore = doc["moore"]
    for key in ("d", "k", "moore_bound", "excess", "defect", "diregular", "geodetic",
                "min_out_degree", "degree_surplus"):
        lines.append(f"{key}={_fmt(moore[key])}")
    if moore["outliers"] is not None:
        lines.append("outliers:")
        for u, o in enumerate(moore["outliers"]):
            lines.append(f"  {u}:" + "".join(f" {w}" for w in o))
    if "audits" in doc:
        s = doc["audit_summary"]
        lines.append(f"audits: holds={s['holds']} fails={s['fails']} vacuous={s['vacuous']}")
        for v in doc["audits"]:
            subject = "" if v["subject"] is None else f" {json.dumps(v['subject'])}"
            line = f"  {v['lemma_id']}{subject}: {v['status']}"
            if v["witness"] is not None:
                line += f" witness={json.dumps(v['witness'], sort_keys=True)}"
            elif v["note"]:
                line += f" ({v['note']})"
            lines.append(line)
    return "\n".join(lines) + "\n"
