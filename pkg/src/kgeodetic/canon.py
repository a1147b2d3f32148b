"""Canonical forms by minimising over breadth-first relabellings.

An admissible relabelling processes new labels in order.  When label ``i`` is
reached but not yet assigned (at the start, or when everything labelled so far
is closed under out-arcs) any unlabelled vertex may take it.  Processing label
``i`` hands the next free labels to its unlabelled out-neighbours in any
order.  The set of admissible relabellings is defined structurally, so the
smallest encoding over it is an isomorphism invariant, and it determines the
digraph.  Rows are fixed as soon as their vertex is processed, which lets the
minimisation discard a branch at the first row that exceeds the best so far.
"""

from __future__ import annotations

from itertools import permutations

from .digraph import Digraph

__all__ = ["CanonicalForm", "canonical_form", "canonical_labelling", "canonical_digraph", "encode"]

Row = tuple[int, ...]


class CanonicalForm(bytes):
    """Byte encoding: ``n``, then per vertex its out-degree and sorted out-list."""

    @property
    def order(self) -> int:
        return self[0]

    def to_digraph(self) -> Digraph:
        n = self[0]
        rows = []
        pos = 1
        for _ in range(n):
            deg = self[pos]
            rows.append(tuple(self[pos + 1 : pos + 1 + deg]))
            pos += 1 + deg
        return Digraph(n, tuple(rows))

    def hex(self) -> str:  # type: ignore[override]
        return bytes(self).hex()

    @classmethod
    def fromhex(cls, text: str) -> CanonicalForm:  # type: ignore[override]
        return cls(bytes.fromhex(text))


def _rows_to_bytes(n: int, rows: list[Row]) -> CanonicalForm:
    if n > 255:
        raise ValueError("canonical encoding supports at most 255 vertices")
    buf = [n]
    for row in rows:
        buf.extend(row)
    return CanonicalForm(bytes(buf))


def encode(g: Digraph) -> CanonicalForm:
    """Encoding of ``g`` under its current labelling."""
    return _rows_to_bytes(g.n, [(len(r),) + r for r in g.out])


def canonical_labelling(g: Digraph) -> tuple[CanonicalForm, list[int]]:
    """Return the canonical form and a permutation ``perm`` with ``g.relabel(perm)`` canonical."""
    n = g.n
    out = g.out
    label = [-1] * n
    order = [-1] * n
    rows: list[Row] = []
    best_rows: list[Row] | None = None
    best_perm: list[int] = []

    def rec(i: int, nxt: int) -> None:
        nonlocal best_rows, best_perm
        if i == n:
            if best_rows is None or rows < best_rows:
                best_rows = list(rows)
                best_perm = list(label)
            return
        if i == nxt:
            for r in range(n):
                if label[r] == -1:
                    label[r] = i
                    order[i] = r
                    rec(i, nxt + 1)
                    label[r] = -1
                    order[i] = -1
            return
        v = order[i]
        fresh = [w for w in out[v] if label[w] == -1]
        known = [label[w] for w in out[v] if label[w] != -1]
        row = tuple(sorted(known + list(range(nxt, nxt + len(fresh)))))
        rows.append((len(row),) + row)
        if best_rows is None or rows <= best_rows[: i + 1]:
            for perm in permutations(fresh):
                for j, w in enumerate(perm):
                    label[w] = nxt + j
                    order[nxt + j] = w
                rec(i + 1, nxt + len(fresh))
                for j, w in enumerate(perm):
                    label[w] = -1
                    order[nxt + j] = -1
        rows.pop()

    rec(0, 0)
    assert best_rows is not None or n == 0
    return _rows_to_bytes(n, best_rows or []), best_perm


def canonical_form(g: Digraph) -> CanonicalForm:
    return canonical_labelling(g)[0]


def canonical_digraph(g: Digraph) -> Digraph:
    return canonical_form(g).to_digraph()
