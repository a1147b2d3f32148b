"""Falsification checks for structural facts about small-excess geodetic digraphs.

Every audit first evaluates its hypotheses.  If they fail the verdict is
``vacuous``; otherwise it is ``holds`` or ``fails`` with a witness that can be
re-checked from the digraph alone.  Nothing here assumes the facts it checks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .digraph import (
    Digraph,
    PairConfig,
    PairConfigError,
    build_pair_config,
    degree_profile,
    is_diregular,
    is_k_geodetic,
    tier,
    unique_common_outneighbour_pairs,
)
from .moore import moore_bound, outlier_set

__all__ = [
    "AuditVerdict",
    "HOLDS",
    "FAILS",
    "VACUOUS",
    "audit_neighbourhood_lemma",
    "audit_identical_neighbourhoods",
    "audit_outlier_regularity",
    "audit_pair_positions",
    "audit_all",
    "status_counts",
]

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class AuditVerdict:
    lemma_id: str
    status: str
    subject: Any = None
    witness: dict | None = None
    # conclusion evaluated even when the hypotheses are not met
    informational: dict | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "status": self.status,
            "subject": self.subject,
            "witness": self.witness,
            "informational": self.informational,
            "note": self.note,
        }


def _excess(g: Digraph, d: int, k: int) -> int:
    return g.n - moore_bound(d, k)


def _sorted_multiset(c: Counter[int]) -> list[int]:
    return sorted(c.elements())


def audit_neighbourhood_lemma(g: Digraph, d: int, k: int) -> list[AuditVerdict]:
    """Compare ``O(N+(u))`` with ``N+(O(u))`` as multisets for every vertex."""
    lemma = "neighbourhood"
    if not (is_diregular(g, d) and is_k_geodetic(g, k) and _excess(g, d, k) >= 1):
        note = "needs a diregular k-geodetic digraph of degree d and positive excess"
        return [AuditVerdict(lemma, VACUOUS, u, note=note) for u in range(g.n)]
    eps = _excess(g, d, k)
    outliers = [outlier_set(g, u, k) for u in range(g.n)]
    verdicts = []
    for u in range(g.n):
        left: Counter[int] = Counter()
        for w in g.out[u]:
            left.update(outliers[w])
        right: Counter[int] = Counter()
        for w in outliers[u]:
            right.update(g.out[w])
        witness = {
            "vertex": u,
            "outliers_of_out_neighbours": _sorted_multiset(left),
            "out_neighbours_of_outliers": _sorted_multiset(right),
            "expected_size": d * eps,
        }
        sizes = {"left": sum(left.values()), "right": sum(right.values())}
        if sizes["left"] == d * eps == sizes["right"] and left == right:
            verdicts.append(AuditVerdict(lemma, HOLDS, u, informational={"sizes": sizes}))
        else:
            verdicts.append(AuditVerdict(lemma, FAILS, u, witness=witness))
    return verdicts


def audit_identical_neighbourhoods(g: Digraph, k: int) -> list[AuditVerdict]:
    """For ``N+(z) == N+(z')`` check ``O(z) = {z'} + X`` and ``O(z') = {z} + X`` with ``|X| = e - 1``.

    The degree parameter is the minimum out-degree of ``g``.
    """
    lemma = "identical-neighbourhoods"
    d = degree_profile(g)[0]
    pairs = [
        (z, w)
        for z, w in combinations(range(g.n), 2)
        if g.out[z] and g.out[z] == g.out[w]
    ]
    if d < 1 or not is_k_geodetic(g, k) or _excess(g, d, k) < 1:
        return [AuditVerdict(lemma, VACUOUS, None, note="needs a k-geodetic digraph with positive excess")]
    if not pairs:
        return [AuditVerdict(lemma, VACUOUS, None, note="no two vertices share their out-neighbourhood")]
    eps = _excess(g, d, k)
    verdicts = []
    for z, w in pairs:
        oz, ow = outlier_set(g, z, k), outlier_set(g, w, k)
        x = oz - {w}
        ok = w in oz and z in ow and ow - {z} == x and len(x) == eps - 1
        wit = {"z": z, "z_prime": w, "O(z)": sorted(oz), "O(z')": sorted(ow), "X": sorted(x)}
        if ok:
            verdicts.append(AuditVerdict(lemma, HOLDS, [z, w], informational={"X": sorted(x)}))
        else:
            verdicts.append(AuditVerdict(lemma, FAILS, [z, w], witness=wit))
    return verdicts


def audit_outlier_regularity(g: Digraph, d: int, k: int) -> AuditVerdict:
    """Each vertex must be an outlier of exactly ``e`` vertices."""
    lemma = "outlier-regularity"
    if not (is_diregular(g, d) and is_k_geodetic(g, k) and _excess(g, d, k) >= 1):
        return AuditVerdict(lemma, VACUOUS, note="needs a diregular k-geodetic digraph with positive excess")
    eps = _excess(g, d, k)
    hits = Counter()
    for u in range(g.n):
        hits.update(outlier_set(g, u, k))
    wrong = {w: hits[w] for w in range(g.n) if hits[w] != eps}
    if wrong:
        return AuditVerdict(lemma, FAILS, witness={"expected": eps, "counts": wrong})
    return AuditVerdict(lemma, HOLDS, informational={"excess": eps})


def _support(c: Counter[int]) -> frozenset[int]:
    return frozenset(v for v, t in c.items() if t)


def audit_pair_positions(
    g: Digraph, cfg: PairConfig, k: int, *, force: bool = False
) -> list[AuditVerdict]:
    """Positions of ``v``, ``v1`` and ``N+(v1)`` relative to the ball of ``u`` (and symmetrically).

    Hypotheses: ``g`` diregular of degree 2, k-geodetic, excess 3, with
    ``k >= 3`` (``k >= 4`` for the last statement).  ``force`` skips the gate,
    which is how synthetic fixtures exercise the failure path.
    """
    u, v, u1, u2, v1 = cfg.u, cfg.v, cfg.u1, cfg.u2, cfg.v1
    if u2 not in g.out[u] or u2 not in g.out[v] or u1 not in g.out[u] or v1 not in g.out[v]:
        raise ValueError("pair configuration does not match the digraph")
    if set(g.out[u]) & set(g.out[v]) != {u2}:
        raise ValueError("pair configuration does not match the digraph")

    base = is_diregular(g, 2) and is_k_geodetic(g, k) and g.n - moore_bound(2, k) == 3
    o_u, o_v = outlier_set(g, u, k), outlier_set(g, v, k)
    o_u1, o_v1 = outlier_set(g, u1, k), outlier_set(g, v1, k)
    far_u1 = _support(tier(g, u1, k - 1)) if k - 1 <= g.n else frozenset()
    far_v1 = _support(tier(g, v1, k - 1)) if k - 1 <= g.n else frozenset()

    lemma4 = {
        "v in N^(k-1)(u1) | O(u)": v in far_u1 or v in o_u,
        "u in N^(k-1)(v1) | O(v)": u in far_v1 or u in o_v,
        "v in O(u) => u2 in O(u1)": v not in o_u or u2 in o_u1,
        "u in O(v) => u2 in O(v1)": u not in o_v or u2 in o_v1,
    }
    cor7 = {
        "v1 in N^(k-1)(u1) | O(u)": v1 in far_u1 or v1 in o_u,
        "u1 in N^(k-1)(v1) | O(v)": u1 in far_v1 or u1 in o_v,
    }
    thm9 = {"v1 in O(u)": v1 in o_u, "u1 in O(v)": u1 in o_v}
    cor13 = {
        "|O(u) & N+(v1)| == 1": len(o_u & set(g.out[v1])) == 1,
        "|O(v) & N+(u1)| == 1": len(o_v & set(g.out[u1])) == 1,
    }
    sets = {
        "O(u)": sorted(o_u),
        "O(v)": sorted(o_v),
        "N^(k-1)(u1)": sorted(far_u1),
        "N^(k-1)(v1)": sorted(far_v1),
    }
    statements = [
        ("pair-position-of-v", lemma4, base and k >= 3),
        ("pair-position-of-v1", cor7, base and k >= 3),
        ("pair-outliers", thm9, base and k >= 3),
        ("pair-outlier-neighbours", cor13, base and k >= 4),
    ]
    verdicts = []
    for lemma, checks, gate in statements:
        holds = all(checks.values())
        info = {"conclusion_holds": holds, "checks": checks, "sets": sets}
        subject = [u, v]
        if not (gate or force):
            verdicts.append(AuditVerdict(lemma, VACUOUS, subject, informational=info, note="hypotheses not met"))
        elif holds:
            verdicts.append(AuditVerdict(lemma, HOLDS, subject, informational=info))
        else:
            failed = sorted(name for name, ok in checks.items() if not ok)
            verdicts.append(
                AuditVerdict(lemma, FAILS, subject, witness={"failed": failed, **sets, "u1": u1, "u2": u2, "v1": v1})
            )
    return verdicts


def audit_all(g: Digraph, d: int, k: int) -> list[AuditVerdict]:
    """Every audit, with pair audits over all unique-common-out-neighbour pairs in both orders."""
    verdicts = list(audit_neighbourhood_lemma(g, d, k))
    verdicts += audit_identical_neighbourhoods(g, k)
    verdicts.append(audit_outlier_regularity(g, d, k))
    if all(len(row) == 2 for row in g.out):
        for a, b, _ in unique_common_outneighbour_pairs(g):
            for u, v in ((a, b), (b, a)):
                try:
                    cfg = build_pair_config(g, u, v, k)
                except PairConfigError:
                    continue
                verdicts += audit_pair_positions(g, cfg, k)
    return verdicts


def status_counts(verdicts: list[AuditVerdict]) -> dict[str, int]:
    counts = {HOLDS: 0, FAILS: 0, VACUOUS: 0}
    for v in verdicts:
        counts[v.status] += 1
    return counts
