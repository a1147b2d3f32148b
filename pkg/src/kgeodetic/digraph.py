"""Simple digraphs, path tiers, k-geodecity and line digraphs.

Vertices are the integers ``0..n-1``; a digraph stores one strictly increasing
out-list per vertex.  Loops and parallel arcs are not representable.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Digraph",
    "DigraphError",
    "GeodecityWitness",
    "PairConfig",
    "PairConfigError",
    "AmbiguousLabellingError",
    "degree_profile",
    "is_diregular",
    "tier",
    "ball",
    "is_k_geodetic",
    "geodecity_witness",
    "reverse",
    "unique_common_outneighbour_pairs",
    "heuchenne_holds",
    "line_digraph",
    "build_pair_config",
]


class DigraphError(ValueError):
    """Raised for malformed out-lists (loops, duplicates, bad indices)."""


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DigraphError(f"negative order {self.n}")
        out = tuple(tuple(row) for row in self.out)
        if len(out) != self.n:
            raise DigraphError(f"expected {self.n} out-lists, got {len(out)}")
        for u, row in enumerate(out):
            for a, b in zip(row, row[1:]):
                if a >= b:
                    raise DigraphError(f"out-list of {u} is not strictly increasing: {row}")
            for w in row:
                if not 0 <= w < self.n:
                    raise DigraphError(f"arc {u}->{w} leaves the vertex range")
                if w == u:
                    raise DigraphError(f"loop at {u}")
        object.__setattr__(self, "out", out)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n):
                raise DigraphError(f"arc {u}->{v} leaves the vertex range")
            if v in rows[u]:
                raise DigraphError(f"duplicate arc {u}->{v}")
            rows[u].add(v)
        return cls(n, tuple(tuple(sorted(r)) for r in rows))

    @classmethod
    def from_lists(cls, rows: Sequence[Iterable[int]]) -> Digraph:
        return cls(len(rows), tuple(tuple(sorted(r)) for r in rows))

    @classmethod
    def cycle(cls, n: int) -> Digraph:
        return cls(n, tuple(((i + 1) % n,) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> Digraph:
        return cls(n, tuple(tuple(j for j in range(n) if j != i) for i in range(n)))

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out[u]]

    @property
    def arc_count(self) -> int:
        return sum(len(row) for row in self.out)

    def in_lists(self) -> tuple[tuple[int, ...], ...]:
        rows: list[list[int]] = [[] for _ in range(self.n)]
        for u in range(self.n):
            for v in self.out[u]:
                rows[v].append(u)
        return tuple(tuple(r) for r in rows)

    def relabel(self, perm: Sequence[int]) -> Digraph:
        """Return the digraph with vertex ``u`` renamed ``perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise DigraphError("relabelling is not a permutation")
        rows: list[tuple[int, ...]] = [()] * self.n
        for u in range(self.n):
            rows[perm[u]] = tuple(sorted(perm[v] for v in self.out[u]))
        return Digraph(self.n, tuple(rows))


def degree_profile(g: Digraph) -> tuple[int, int, int, int]:
    """Return ``(min_out, max_out, min_in, max_in)``; all zero for ``n == 0``."""
    if g.n == 0:
        return (0, 0, 0, 0)
    outdeg = [len(row) for row in g.out]
    indeg = [0] * g.n
    for row in g.out:
        for v in row:
            indeg[v] += 1
    return (min(outdeg), max(outdeg), min(indeg), max(indeg))


def is_diregular(g: Digraph, d: int) -> bool:
    if d < 1:
        raise ValueError("degree must be at least 1")
    return degree_profile(g) == (d, d, d, d)


def tier(g: Digraph, u: int, length: int) -> Counter[int]:
    """Map each vertex to the number of distinct ``length``-paths from ``u``.

    Paths never repeat a vertex, so closed walks back to ``u`` are excluded.
    """
    if not 0 <= length <= g.n:
        raise ValueError(f"path length {length} outside [0, {g.n}]")
    counts: Counter[int] = Counter()
    on_path = [False] * g.n
    on_path[u] = True

    def walk(x: int, remaining: int) -> None:
        if remaining == 0:
            counts[x] += 1
            return
        for y in g.out[x]:
            if not on_path[y]:
                on_path[y] = True
                walk(y, remaining - 1)
                on_path[y] = False

    walk(u, length)
    return counts


def ball(g: Digraph, u: int, length: int) -> frozenset[int]:
    """Vertices reachable from ``u`` by a path of length at most ``length``."""
    if not 0 <= length <= g.n:
        raise ValueError(f"path length {length} outside [0, {g.n}]")
    seen = {u}
    frontier = [u]
    for _ in range(length):
        nxt = []
        for x in frontier:
            for y in g.out[x]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class GeodecityWitness:
    """Two distinct short paths with equal endpoints, or one short closed walk."""

    kind: str  # "duplicate-path" | "short-closed-walk"
    source: int
    target: int
    path_a: tuple[int, ...]
    path_b: tuple[int, ...] = ()

    def is_valid_for(self, g: Digraph, k: int) -> bool:
        """Re-check the witness against ``g`` from scratch."""

        def is_walk(p: tuple[int, ...]) -> bool:
            return len(p) >= 2 and all(b in g.out[a] for a, b in zip(p, p[1:]))

        a = self.path_a
        if not is_walk(a) or len(a) - 1 > k or a[0] != self.source or a[-1] != self.target:
            return False
        if self.kind == "short-closed-walk":
            return self.source == self.target and not self.path_b
        b = self.path_b
        return (
            self.kind == "duplicate-path"
            and is_walk(b)
            and len(b) - 1 <= k
            and b[0] == self.source
            and b[-1] == self.target
            and a != b
            and len(set(a)) == len(a)
            and len(set(b)) == len(b)
        )


def geodecity_witness(g: Digraph, k: int) -> GeodecityWitness | None:
    """Return a violation of k-geodecity, or ``None`` if ``g`` is k-geodetic.

    For each source a breadth-first sweep records the first arrival at every
    vertex; any second arrival within ``k`` steps is a violation.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    for s in range(g.n):
        path_to: dict[int, tuple[int, ...]] = {s: (s,)}
        frontier = [s]
        for _ in range(k):
            nxt = []
            for x in frontier:
                px = path_to[x]
                for y in g.out[x]:
                    if y not in path_to:
                        path_to[y] = px + (y,)
                        nxt.append(y)
                        continue
                    walk = px + (y,)
                    if y in px:
                        # the walk closes a cycle through y of length <= k
                        cyc = walk[px.index(y):]
                        return GeodecityWitness("short-closed-walk", y, y, cyc)
                    return GeodecityWitness("duplicate-path", s, y, path_to[y], walk)
            frontier = nxt
    return None


def is_k_geodetic(g: Digraph, k: int) -> bool:
    return geodecity_witness(g, k) is None


def reverse(g: Digraph) -> Digraph:
    return Digraph(g.n, g.in_lists())


def unique_common_outneighbour_pairs(g: Digraph) -> list[tuple[int, int, int]]:
    """All ``(u, v, w)`` with ``u < v`` and ``N+(u) & N+(v) == {w}``."""
    sets = [frozenset(row) for row in g.out]
    pairs = []
    for u, v in combinations(range(g.n), 2):
        common = sets[u] & sets[v]
        if len(common) == 1:
            pairs.append((u, v, next(iter(common))))
    return pairs


def heuchenne_holds(g: Digraph) -> bool:
    """True iff every two out-neighbourhoods are equal or disjoint."""
    sets = [frozenset(row) for row in g.out]
    for u, v in combinations(range(g.n), 2):
        if sets[u] != sets[v] and sets[u] & sets[v]:
            return False
    return True


def line_digraph(h: Digraph) -> Digraph:
    """Line digraph of ``h``; vertex ``i`` is the ``i``-th arc of ``h`` in lexicographic order."""
    arcs = sorted(h.arcs())
    index = {a: i for i, a in enumerate(arcs)}
    rows = tuple(tuple(sorted(index[(b, c)] for c in h.out[b])) for (_, b) in arcs)
    return Digraph(len(arcs), rows)


class PairConfigError(ValueError):
    """Raised when ``(u, v)`` does not share exactly one out-neighbour."""


class AmbiguousLabellingError(PairConfigError):
    """Raised in strict mode when an in-neighbour label is not uniquely defined."""


@dataclass(frozen=True)
class PairConfig:
    """Labelled neighbourhood of a pair with a unique common out-neighbour.

    ``labels`` maps names such as ``"u3"`` or ``"v9"`` to vertices.  Within each
    out-neighbourhood the lower-indexed vertex takes the lower label.
    ``ambiguous`` names the in-neighbour fields left unset because the
    relevant in-degree is not two.
    """

    u: int
    v: int
    u1: int
    u2: int
    v1: int
    u_minus: int | None = None
    u_plus: int | None = None
    v_minus: int | None = None
    v_plus: int | None = None
    labels: dict[str, int] = field(default_factory=dict)
    ambiguous: tuple[str, ...] = ()
    overlaps: tuple[str, ...] = ()

    @property
    def v2(self) -> int:
        return self.u2


def _other(row: Sequence[int], x: int) -> int:
    rest = [y for y in row if y != x]
    return rest[0]


def build_pair_config(g: Digraph, u: int, v: int, k: int, *, strict: bool = False) -> PairConfig:
    if any(len(row) != 2 for row in g.out):
        raise PairConfigError("pair configurations need a 2-out-regular digraph")
    if u == v:
        raise PairConfigError("u and v must differ")
    common = set(g.out[u]) & set(g.out[v])
    if len(common) != 1:
        raise PairConfigError(f"vertices {u} and {v} share {len(common)} out-neighbours, not one")
    u2 = common.pop()
    u1 = _other(g.out[u], u2)
    v1 = _other(g.out[v], u2)

    ins = g.in_lists()
    ambiguous = []
    u_minus = u_plus = v_minus = v_plus = None
    if len(ins[u1]) == 2:
        u_minus = _other(ins[u1], u)
        u_plus = _other(g.out[u_minus], u1)
    else:
        ambiguous += ["u_minus", "u_plus"]
    if len(ins[v1]) == 2:
        v_minus = _other(ins[v1], v)
        v_plus = _other(g.out[v_minus], v1)
    else:
        ambiguous += ["v_minus", "v_plus"]
    if ambiguous and strict:
        raise AmbiguousLabellingError(
            f"in-degree of u1={u1} is {len(ins[u1])}, of v1={v1} is {len(ins[v1])}"
        )

    labels: dict[str, int] = {"u": u, "v": v, "u1": u1, "u2": u2, "v1": v1, "v2": u2}
    overlaps: list[str] = []
    depth_cap = min(k, 3)

    def grow(prefix: str, roots: dict[int, int]) -> None:
        # label i has children 2i+1, 2i+2 at one greater depth
        seen = {w: f"{prefix}{i}" for i, w in roots.items()}
        seen[labels[prefix]] = prefix
        layer = dict(roots)
        for _ in range(depth_cap - 1):
            nxt = {}
            for i, w in sorted(layer.items()):
                for j, child in enumerate(g.out[w]):
                    name = f"{prefix}{2 * i + 1 + j}"
                    if child in seen:
                        overlaps.append(f"{name}={seen[child]}")
                        continue
                    seen[child] = name
                    labels[name] = child
                    nxt[2 * i + 1 + j] = child
            layer = nxt

    grow("u", {1: u1, 2: u2})
    grow("v", {1: v1})
    return PairConfig(
        u=u,
        v=v,
        u1=u1,
        u2=u2,
        v1=v1,
        u_minus=u_minus,
        u_plus=u_plus,
        v_minus=v_minus,
        v_plus=v_plus,
        labels=labels,
        ambiguous=tuple(ambiguous),
        overlaps=tuple(overlaps),
    )
