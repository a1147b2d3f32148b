"""Moore bound, excess and defect, outlier sets and repeat multisets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .digraph import Digraph, ball, degree_profile, is_diregular, is_k_geodetic, tier

__all__ = [
    "MAX_ORDER",
    "MooreReport",
    "RepeatMultiset",
    "moore_bound",
    "outlier_set",
    "outlier_multiset",
    "repeat_multiset",
    "classify",
]

# Largest order the search tables and text formats are expected to index.
MAX_ORDER = 2**63 - 1


def moore_bound(d: int, k: int) -> int:
    """``1 + d + d**2 + ... + d**k``.

    Raises ``OverflowError`` once the sum exceeds a signed 64-bit vertex index.
    """
    if d < 1 or k < 1:
        raise ValueError(f"moore_bound needs d >= 1 and k >= 1, got d={d}, k={k}")
    total, term = 1, 1
    for _ in range(k):
        term *= d
        total += term
        if total > MAX_ORDER:
            raise OverflowError(f"M({d},{k}) exceeds {MAX_ORDER}")
    return total


def outlier_set(g: Digraph, u: int, k: int) -> frozenset[int]:
    """Vertices not reachable from ``u`` by a path of length at most ``k``."""
    return frozenset(range(g.n)) - ball(g, u, min(k, g.n))


def outlier_multiset(g: Digraph, vertices: Iterable[int], k: int) -> Counter[int]:
    """Multiset union of the outlier sets of ``vertices`` (repeats count)."""
    total: Counter[int] = Counter()
    for u in vertices:
        total.update(outlier_set(g, u, k))
    return total


@dataclass(frozen=True)
class RepeatMultiset:
    base: int
    entries: dict[int, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.entries)


def _closed_paths(g: Digraph, u: int, k: int) -> int:
    """Number of cycles of length ``1..k`` through ``u``."""
    count = 0
    on_path = [False] * g.n
    on_path[u] = True

    def walk(x: int, depth: int) -> None:
        nonlocal count
        for y in g.out[x]:
            if y == u:
                count += 1
            elif not on_path[y] and depth + 1 < k:
                on_path[y] = True
                walk(y, depth + 1)
                on_path[y] = False

    walk(u, 0)
    return count


def repeat_multiset(g: Digraph, u: int, k: int) -> RepeatMultiset:
    """A vertex with ``t + 1`` distinct paths of length ``<= k`` from ``u`` appears ``t`` times.

    The base vertex counts its trivial path plus each cycle of length ``<= k``
    through it, so the multiset is empty for every vertex exactly when ``g``
    is k-geodetic.
    """
    paths: Counter[int] = Counter()
    for length in range(1, min(k, g.n) + 1):
        paths.update(tier(g, u, length))
    entries = {v: t - 1 for v, t in sorted(paths.items()) if t > 1}
    loops = _closed_paths(g, u, k)
    if loops:
        entries[u] = loops
    return RepeatMultiset(u, dict(sorted(entries.items())))


@dataclass(frozen=True)
class MooreReport:
    n: int
    d: int
    k: int
    moore_bound: int
    excess: int | None
    defect: int | None
    diregular: bool
    geodetic: bool
    min_out_degree: int
    degree_surplus: bool
    outliers: tuple[tuple[int, ...], ...] | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "moore_bound": self.moore_bound,
            "excess": self.excess,
            "defect": self.defect,
            "diregular": self.diregular,
            "geodetic": self.geodetic,
            "min_out_degree": self.min_out_degree,
            "degree_surplus": self.degree_surplus,
            "outliers": None if self.outliers is None else [list(o) for o in self.outliers],
        }


def classify(g: Digraph, d: int, k: int) -> MooreReport:
    m = moore_bound(d, k)
    geodetic = is_k_geodetic(g, k)
    min_out = degree_profile(g)[0]
    outliers = None
    if geodetic:
        outliers = tuple(tuple(sorted(outlier_set(g, u, k))) for u in range(g.n))
    return MooreReport(
        n=g.n,
        d=d,
        k=k,
        moore_bound=m,
        excess=g.n - m if g.n >= m else None,
        defect=m - g.n if g.n < m else None,
        diregular=is_diregular(g, d),
        geodetic=geodetic,
        min_out_degree=min_out,
        degree_surplus=min_out > d,
        outliers=outliers,
    )
