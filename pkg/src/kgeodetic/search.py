"""Exhaustive generation of d-out-regular k-geodetic digraphs of order M(d,k)+e.

Vertices are labelled breadth-first from vertex 0.  Each out-list is filled in
increasing order with already labelled vertices or the next fresh label; when
the labelled vertices close up under out-arcs before all ``n`` are used, the
next fresh label starts a new root.  The labelled digraphs produced this way
are exactly the admissible relabellings used by :mod:`kgeodetic.canon`, so
every isomorphism class reaches at least one leaf, and leaves are merged by
canonical form.

Geodecity is maintained incrementally.  For every labelled ``x`` and
``j <= k`` the tables hold the bitmask of vertices at distance exactly ``j``
(forward) and of vertices reaching ``x`` in exactly ``j`` steps (backward).
Adding ``a -> b`` joins every ``x`` at distance ``i`` before ``a`` with every
``y`` at distance ``j`` after ``b`` where ``i + 1 + j <= k``; the arc is
rejected if any such ``y`` is already within ``k`` of ``x`` (``y == x``
included, which catches short cycles).

The tree is cut at ``split_depth`` arcs into independent tasks.  Each task
records where in the sequential preorder its nodes fall, so node budgets,
node counts and results do not depend on the worker count or split depth.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .canon import CanonicalForm, canonical_form, encode
from .digraph import Digraph, is_diregular, is_k_geodetic
from .moore import classify, moore_bound

__all__ = [
    "SearchParams",
    "SearchOutcome",
    "PartialDigraph",
    "CheckpointError",
    "search",
    "certify_nonexistence",
    "verify_result",
    "default_split_depth",
]

log = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "kgeodetic-search-checkpoint"
CHECKPOINT_VERSION = 1
MAX_SEARCH_ORDER = 255


class CheckpointError(ValueError):
    """Raised for unreadable, corrupt or mismatched checkpoint files."""


@dataclass(frozen=True)
class SearchParams:
    d: int
    k: int
    epsilon: int
    require_diregular: bool = False
    max_nodes: int | None = None
    time_budget: float | None = None
    split_depth: int | None = None
    checkpoint_path: str | None = None
    jobs: int = 1
    orderly: bool = False

    def __post_init__(self) -> None:
        if self.d < 1 or self.k < 1:
            raise ValueError("search needs d >= 1 and k >= 1")
        if self.epsilon < 0:
            raise ValueError("excess must be non-negative")
        if self.order > MAX_SEARCH_ORDER:
            raise ValueError(f"order {self.order} exceeds {MAX_SEARCH_ORDER}")
        if self.max_nodes is not None and self.max_nodes < 0:
            raise ValueError("max_nodes must be non-negative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.split_depth is not None and self.split_depth < 0:
            raise ValueError("split_depth must be non-negative")

    @property
    def order(self) -> int:
        return moore_bound(self.d, self.k) + self.epsilon

    def problem(self) -> dict:
        """The fields that determine the search tree (echoed in checkpoints)."""
        return {
            "d": self.d,
            "k": self.k,
            "epsilon": self.epsilon,
            "require_diregular": self.require_diregular,
        }


@dataclass
class SearchOutcome:
    params: SearchParams
    results: list[Digraph]
    nodes_explored: int
    complete: bool
    duration: float
    tasks: int = 0
    forms: list[CanonicalForm] = field(default_factory=list)

    def summary(self) -> dict:
        p = self.params
        return {
            "d": p.d,
            "k": p.k,
            "epsilon": p.epsilon,
            "order": p.order,
            "require_diregular": p.require_diregular,
            "complete": self.complete,
            "result_count": len(self.results),
            "nodes_explored": self.nodes_explored,
            "tasks": self.tasks,
            "split_depth": p.split_depth if p.split_depth is not None else default_split_depth(p),
            "max_nodes": p.max_nodes,
            "time_budget": p.time_budget,
            "canonical_forms": [f.hex() for f in self.forms],
            "duration_seconds": round(self.duration, 3),
        }


class PartialDigraph:
    """Growing digraph with incremental ≤k distance tables.

    ``push(b)`` fills the next out-slot with ``b`` if that keeps the prefix
    k-geodetic (and in-degrees ``<= d`` when diregular); ``pop()`` undoes it.
    """

    def __init__(self, n: int, d: int, k: int, diregular: bool) -> None:
        self.n, self.d, self.k = n, d, k
        self.diregular = diregular
        self.min_root_order = moore_bound(d, k)
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.indeg = [0] * n
        self.next_fresh = 0
        self.slot = 0  # index of the next out-slot, vertex slot // d
        w = k + 1
        self.fwd = [0] * (n * w)
        self.bwd = [0] * (n * w)
        for x in range(n):
            self.fwd[x * w] = 1 << x
            self.bwd[x * w] = 1 << x
        self.reach = [1 << x for x in range(n)]
        self._undo: list[tuple] = []

    @property
    def done(self) -> bool:
        return self.slot == self.n * self.d

    def candidates(self) -> list[int] | None:
        """Targets for the next slot in trial order, or ``None`` if the node is dead.

        May label the current vertex as a new root as a side effect; this is
        undone by the matching ``pop``.
        """
        a, s = divmod(self.slot, self.d)
        if s == 0 and a == self.next_fresh:
            # everything labelled so far is closed: a closed k-geodetic
            # d-out-regular part has at least M(d,k) vertices
            if 0 < a < self.min_root_order:
                return None
            self.next_fresh += 1
            self._undo.append(("root",))
        else:
            self._undo.append(None)
        lo = self.out[a][-1] + 1 if s else 0
        hi = min(self.next_fresh + 1, self.n)
        cands = []
        for b in range(lo, hi):
            if b == a:
                continue
            if self.diregular and self.indeg[b] >= self.d:
                continue
            cands.append(b)
        return cands

    def release(self) -> None:
        """Undo the bookkeeping of ``candidates``."""
        if self._undo.pop() is not None:
            self.next_fresh -= 1

    def push(self, b: int) -> bool:
        a = self.slot // self.d
        k = self.k
        w = k + 1
        fwd, bwd, reach = self.fwd, self.bwd, self.reach
        after = [fwd[b * w + j] for j in range(k)]
        # cumulative: vertices within j steps after b
        within = []
        acc = 0
        for j in range(k):
            acc |= after[j]
            within.append(acc)
        sources = []
        for i in range(k):
            xs = bwd[a * w + i]
            if not xs:
                continue
            ys = within[k - 1 - i]
            while xs:
                low = xs & -xs
                x = low.bit_length() - 1
                xs ^= low
                if reach[x] & ys:
                    return False
                sources.append((x, i))
        fwd = fwd.copy()
        bwd = bwd.copy()
        reach = reach.copy()
        for x, i in sources:
            for j in range(k - i):
                ys = after[j]
                if not ys:
                    continue
                dist = i + 1 + j
                fwd[x * w + dist] |= ys
                reach[x] |= ys
                xbit = 1 << x
                while ys:
                    low = ys & -ys
                    y = low.bit_length() - 1
                    ys ^= low
                    bwd[y * w + dist] |= xbit
        self._undo.append((self.fwd, self.bwd, self.reach, self.next_fresh))
        self.fwd, self.bwd, self.reach = fwd, bwd, reach
        if b == self.next_fresh:
            self.next_fresh += 1
        self.out[a].append(b)
        self.indeg[b] += 1
        self.slot += 1
        return True

    def pop(self) -> None:
        self.slot -= 1
        a = self.slot // self.d
        b = self.out[a].pop()
        self.indeg[b] -= 1
        self.fwd, self.bwd, self.reach, self.next_fresh = self._undo.pop()

    def digraph(self) -> Digraph:
        return Digraph(self.n, tuple(tuple(r) for r in self.out))


class _Truncated(Exception):
    pass


class _Walker:
    """Depth-first traversal of one subtree with a node counter."""

    def __init__(self, params: SearchParams, budget: int | None, deadline: float | None):
        self.p = params
        self.budget = budget
        self.deadline = deadline
        self.nodes = 0
        self.found: list[tuple[int, str]] = []
        self.truncated = False
        self.seen: set[bytes] = set()

    def enter(self) -> None:
        if self.budget is not None and self.nodes >= self.budget:
            raise _Truncated
        if self.deadline is not None and self.nodes % 256 == 0 and time.time() > self.deadline:
            raise _Truncated
        self.nodes += 1

    def leaf(self, g: Digraph) -> None:
        form = canonical_form(g)
        if self.p.orderly and encode(g) != form:
            return
        if form in self.seen:
            return
        self.seen.add(form)
        self.found.append((self.nodes, form.hex()))

    def explore(self, pd: PartialDigraph) -> None:
        self.enter()
        if pd.done:
            self.leaf(pd.digraph())
            return
        cands = pd.candidates()
        if cands is None:
            return
        try:
            for b in cands:
                if pd.push(b):
                    try:
                        self.explore(pd)
                    finally:
                        pd.pop()
        finally:
            pd.release()


def _new_partial(p: SearchParams) -> PartialDigraph:
    return PartialDigraph(p.order, p.d, p.k, p.require_diregular)


def default_split_depth(p: SearchParams) -> int:
    """Arcs of the forced breadth-first tree from vertex 0, plus ``2d``."""
    tree_arcs = p.d * moore_bound(p.d, p.k - 1) if p.k > 1 else p.d
    return min(tree_arcs + 2 * p.d, p.order * p.d)


def _replay(p: SearchParams, prefix: tuple[int, ...]) -> PartialDigraph:
    pd = _new_partial(p)
    for b in prefix:
        cands = pd.candidates()
        if cands is None or b not in cands or not pd.push(b):
            raise CheckpointError(f"prefix {list(prefix)} is not a valid search path")
    return pd


def _split(p: SearchParams, depth: int) -> tuple[list[tuple[tuple[int, ...], int]], int]:
    """Tasks at ``depth`` arcs in preorder, each with the count of shallower
    nodes visited before it; also the total count of shallower nodes."""
    tasks: list[tuple[tuple[int, ...], int]] = []
    counter = 0
    pd = _new_partial(p)
    prefix: list[int] = []

    def rec() -> None:
        nonlocal counter
        if len(prefix) == depth or pd.done:
            tasks.append((tuple(prefix), counter))
            return
        counter += 1
        cands = pd.candidates()
        if cands is None:
            return
        for b in cands:
            if pd.push(b):
                prefix.append(b)
                rec()
                prefix.pop()
                pd.pop()
        pd.release()

    rec()
    return tasks, counter


def _run_task(args: tuple) -> dict:
    p, prefix, budget, deadline = args
    walker = _Walker(p, budget, deadline)
    pd = _replay(p, prefix)
    try:
        walker.explore(pd)
    except _Truncated:
        walker.truncated = True
    return {
        "prefix": list(prefix),
        "nodes": walker.nodes,
        "results": walker.found,
        "truncated": walker.truncated,
    }


def verify_result(g: Digraph, p: SearchParams) -> bool:
    """Post-hoc check of one result, independent of the incremental tables."""
    if g.n != p.order or any(len(row) != p.d for row in g.out):
        return False
    if p.require_diregular and not is_diregular(g, p.d):
        return False
    if not is_k_geodetic(g, p.k):
        return False
    report = classify(g, p.d, p.k)
    return report.excess == p.epsilon and all(len(o) == p.epsilon for o in report.outliers)


def _load_checkpoint(path: Path, p: SearchParams, depth: int) -> dict[tuple[int, ...], dict]:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(f"{path} is not a search checkpoint")
    if doc.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {doc.get('version')!r}")
    if doc.get("params") != p.problem() or doc.get("split_depth") != depth:
        raise CheckpointError("checkpoint was written for a different search")
    done = {}
    try:
        for entry in doc["completed"]:
            key = tuple(int(b) for b in entry["prefix"])
            done[key] = {
                "prefix": list(key),
                "nodes": int(entry["nodes"]),
                "results": [(int(i), str(h)) for i, h in entry["results"]],
                "truncated": False,
            }
            for _, h in done[key]["results"]:
                CanonicalForm.fromhex(h).to_digraph()
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"corrupt checkpoint entry: {exc}") from exc
    return done


def _write_checkpoint(path: Path, p: SearchParams, depth: int, done: dict) -> None:
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "params": p.problem(),
        "split_depth": depth,
        "completed": [
            {"prefix": r["prefix"], "nodes": r["nodes"], "results": r["results"]}
            for _, r in sorted(done.items())
        ],
        "partial_results": sorted({h for r in done.values() for _, h in r["results"]}),
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def search(params: SearchParams) -> SearchOutcome:
    """Enumerate isomorphism classes of d-out-regular k-geodetic digraphs of
    order ``M(d,k) + epsilon`` (diregular ones only if requested).

    With ``complete=True`` the result list is exhaustive.  A node budget cuts
    the search at exactly the same point as a sequential run would.
    """
    started = time.time()
    p = params
    depth = p.split_depth if p.split_depth is not None else default_split_depth(p)
    deadline = started + p.time_budget if p.time_budget is not None else None
    tasks, prefix_nodes = _split(p, depth)
    log.info("search d=%d k=%d e=%d: %d tasks at depth %d", p.d, p.k, p.epsilon, len(tasks), depth)

    ckpt = Path(p.checkpoint_path) if p.checkpoint_path else None
    done: dict[tuple[int, ...], dict] = {}
    if ckpt is not None and ckpt.exists():
        done = _load_checkpoint(ckpt, p, depth)
        unknown = set(done) - {t for t, _ in tasks}
        if unknown:
            raise CheckpointError(f"checkpoint lists unknown prefixes {sorted(unknown)[:3]}")

    pending = [(p, prefix, p.max_nodes, deadline) for prefix, _ in tasks if prefix not in done]
    outputs: dict[tuple[int, ...], dict] = dict(done)

    def record(res: dict) -> None:
        key = tuple(res["prefix"])
        outputs[key] = res
        if ckpt is not None and not res["truncated"]:
            done[key] = res
            _write_checkpoint(ckpt, p, depth, done)

    if p.jobs == 1 or len(pending) <= 1:
        spent = 0
        for prefix, before in tasks:
            if prefix in done:
                spent += done[prefix]["nodes"]
                continue
            budget = None if p.max_nodes is None else max(p.max_nodes - before - spent, 0)
            res = _run_task((p, prefix, budget, deadline))
            record(res)
            spent += res["nodes"]
            if res["truncated"]:
                break
    else:
        with ProcessPoolExecutor(max_workers=p.jobs) as pool:
            for res in pool.map(_run_task, pending):
                record(res)

    nodes, complete, forms = _merge(tasks, prefix_nodes, outputs, p.max_nodes)
    ordered = sorted(CanonicalForm(f) for f in forms)
    return SearchOutcome(
        params=p,
        results=[f.to_digraph() for f in ordered],
        nodes_explored=nodes,
        complete=complete,
        duration=time.time() - started,
        tasks=len(tasks),
        forms=ordered,
    )


def _merge(
    tasks: list[tuple[tuple[int, ...], int]],
    prefix_nodes: int,
    outputs: dict[tuple[int, ...], dict],
    budget: int | None,
) -> tuple[int, bool, set[bytes]]:
    """Replay task outputs in sequential preorder, applying the node budget."""
    nodes = 0
    shallow = 0
    complete = True
    forms: set[bytes] = set()
    for prefix, before in tasks:
        nodes += before - shallow
        shallow = before
        if budget is not None and nodes > budget:
            return budget, False, forms
        res = outputs.get(prefix)
        if res is None:
            complete = False
            continue
        allowed = None if budget is None else budget - nodes
        if allowed is not None and (
            res["nodes"] > allowed or (res["truncated"] and res["nodes"] >= allowed)
        ):
            forms.update(bytes.fromhex(h) for i, h in res["results"] if i <= allowed)
            return budget, False, forms
        forms.update(bytes.fromhex(h) for _, h in res["results"])
        nodes += res["nodes"]
        if res["truncated"]:
            complete = False
    nodes += prefix_nodes - shallow
    if budget is not None and nodes > budget:
        return budget, False, forms
    return nodes, complete, forms


def certify_nonexistence(params: SearchParams) -> SearchOutcome:
    """Run the search to exhaustion; ``complete`` with no results certifies nonexistence.

    Results found along the way are kept, never used to stop early.
    """
    return search(params)
