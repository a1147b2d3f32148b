"""Reference computations that share no code with the library paths they check."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np


def adjacency(rows) -> np.ndarray:
    n = len(rows)
    a = np.zeros((n, n), dtype=np.int64)
    for u, row in enumerate(rows):
        for v in row:
            a[u, v] += 1
    return a


def matrix_geodetic(rows, k: int) -> bool:
    """Every entry of I + A + ... + A^k is at most 1."""
    a = adjacency(rows)
    n = len(rows)
    total = np.eye(n, dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(k):
        power = power @ a
        total += power
    return bool((total <= 1).all())


def bfs_distances(rows, s: int) -> dict[int, int]:
    dist = {s: 0}
    queue = [s]
    for x in queue:
        for y in rows[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def outliers_by_bfs(rows, u: int, k: int) -> set[int]:
    dist = bfs_distances(rows, u)
    return {w for w in range(len(rows)) if dist.get(w, k + 1) > k}


def paths_of_length(rows, u: int, length: int) -> dict[int, int]:
    """Count simple paths by listing every walk and discarding repeats."""
    counts: dict[int, int] = {}
    walks = [(u,)]
    for _ in range(length):
        walks = [w + (y,) for w in walks for y in rows[w[-1]]]
    for w in walks:
        if len(set(w)) == len(w):
            counts[w[-1]] = counts.get(w[-1], 0) + 1
    return counts


def random_rows(rng: random.Random, n: int, max_out: int) -> list[list[int]]:
    rows = []
    for u in range(n):
        others = [v for v in range(n) if v != u]
        rows.append(sorted(rng.sample(others, rng.randint(0, min(max_out, n - 1)))))
    return rows


def to_nx(rows) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(rows)))
    g.add_edges_from((u, v) for u, row in enumerate(rows) for v in row)
    return g


def brute_force_classes(d: int, n: int, k: int, diregular: bool = False) -> list[list[list[int]]]:
    """All d-out-regular k-geodetic digraphs on n vertices, one per isomorphism class."""
    choices = [list(itertools.combinations([v for v in range(n) if v != u], d)) for u in range(n)]
    reps: list[tuple[nx.DiGraph, list]] = []
    for rows in itertools.product(*choices):
        if diregular:
            indeg = [0] * n
            for row in rows:
                for v in row:
                    indeg[v] += 1
            if any(t != d for t in indeg):
                continue
        if not matrix_geodetic(rows, k):
            continue
        g = to_nx(rows)
        if any(nx.is_isomorphic(g, h) for h, _ in reps):
            continue
        reps.append((g, [list(r) for r in rows]))
    return [rows for _, rows in reps]
