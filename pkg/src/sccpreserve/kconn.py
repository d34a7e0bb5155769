"""k-connectivity preservers (no faults): greedy construction, demand pairs,
the two-level unbreakability decomposition, and the cut-size certificate.

Demand pairs are the edges of a maximum spanning tree of the complete graph
weighted by clamped symmetric connectivity.  Preserving min(lambda, k) on
those n-1 pairs preserves it on all pairs: connectivity along a tree path
lower-bounds the pair, and tree maximality upper-bounds it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import ceil, sqrt

from .digraph import DiGraph
from .errors import InputError
from .expander import is_unbreakable
from .flowcut import Cut, boundary_edges, flow_value, symmetric_connectivity
from .preservers import PreserverResult


@dataclass(frozen=True)
class DemandPairs:
    pairs: tuple[tuple[int, int, int], ...]  # (u, v, clamped lambda)
    tree_edges: tuple[tuple[int, int], ...]

    def path_min(self, u: int, v: int) -> int:
        """min pair-weight along the unique tree path from u to v."""
        if u == v:
            raise InputError("path_min needs distinct endpoints")
        adj: dict[int, list[tuple[int, int]]] = {}
        for a, b, w in self.pairs:
            adj.setdefault(a, []).append((b, w))
            adj.setdefault(b, []).append((a, w))
        best = {u: None}
        queue = [u]
        while queue:
            cur = queue.pop()
            for nxt, w in adj.get(cur, ()):
                cand = w if best[cur] is None else min(best[cur], w)
                if nxt not in best:
                    best[nxt] = cand
                    queue.append(nxt)
        if v not in best:
            raise InputError(f"{v} not in the demand tree component of {u}")
        return best[v]


def _lambda_k(g: DiGraph, u: int, v: int, k: int) -> int:
    return symmetric_connectivity(g, u, v, k) if k > 0 else 0


def demand_pairs(g: DiGraph, k: int) -> DemandPairs:
    """Maximum-spanning-tree demand pairs under clamped pairwise connectivity.

    Ties are broken by (weight desc, vertex ids asc), which fixes one of the
    equally valid maximum spanning trees.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    n = g.n
    if n <= 1:
        return DemandPairs(pairs=(), tree_edges=())
    weighted = []
    for u in range(n):
        for v in range(u + 1, n):
            weighted.append((-_lambda_k(g, u, v, k), u, v))
    weighted.sort()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = []
    for neg_w, u, v in weighted:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            pairs.append((u, v, -neg_w))
        if len(pairs) == n - 1:
            break
    return DemandPairs(
        pairs=tuple(pairs), tree_edges=tuple((u, v) for u, v, _ in pairs)
    )


def _preserves_pairs(h: DiGraph, banned: frozenset, targets) -> bool:
    """Does h minus banned still meet every (u, v, needed) target?"""
    probe = h.remove_edges(banned)
    for u, v, needed in targets:
        if needed == 0:
            continue
        if flow_value(probe, [u], [v], cap=needed) < needed:
            return False
        if flow_value(probe, [v], [u], cap=needed) < needed:
            return False
    return True


def greedy_kconn_preserver(
    g: DiGraph, k: int, use_demand_pairs: bool = False
) -> PreserverResult:
    """Edge-minimal subgraph preserving min(lambda, k) for every pair.

    With ``use_demand_pairs`` each removal is tested only against the demand
    pairs of the current graph (recomputed after every committed removal);
    transitivity keeps the final result a preserver of the input.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    kept = set(g.edge_ids())
    removal_attempts = 0
    oracle_calls = 0

    def current_targets(h: DiGraph):
        if use_demand_pairs:
            return demand_pairs(h, k).pairs
        targets = []
        for u in range(g.n):
            for v in range(u + 1, g.n):
                lam = _lambda_k(h, u, v, k)
                if lam:
                    targets.append((u, v, lam))
        return targets

    h = g
    targets = current_targets(h)
    changed = True
    while changed:
        changed = False
        for eid in sorted(kept):
            e = g.edge(eid)
            removal_attempts += 1
            if e.tail != e.head:
                oracle_calls += 1
                if not _preserves_pairs(h, frozenset((eid,)), targets):
                    continue
            kept.discard(eid)
            h = g.restrict_to(kept)
            targets = current_targets(h)
            changed = True
    return PreserverResult(
        kept_edges=frozenset(kept),
        variant="kconn",
        params={"k": k, "use_demand_pairs": use_demand_pairs},
        stats={
            "input_edges": g.m,
            "output_edges": len(kept),
            "removal_attempts": removal_attempts,
            "oracle_calls": oracle_calls,
        },
        provenance="greedy_kconn",
    )


def default_part_size(n: int, k: int) -> int:
    """The decomposition parameter the size analysis optimizes: ceil(sqrt(nk))."""
    return max(1, ceil(sqrt(max(n, 0) * max(k, 0))))


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[frozenset, ...]
    cuts: tuple[Cut, ...]
    q: int
    k: int


def unbreakability_decomposition(g: DiGraph, q: int, k: int) -> Decomposition:
    """Split V along small cuts until every part is (q, k)-unbreakable.

    A part S splits when some global cut (L, R) with boundary at most k in
    one direction has at least q members of S on each side; the witness
    search is the unbreakability oracle with threshold q-1.  At most n/q
    cuts are ever recorded.
    """
    if q < 1:
        raise InputError("q must be positive")
    if k < 0:
        raise InputError("k must be nonnegative")
    if g.n == 0:
        return Decomposition(parts=(), cuts=(), q=q, k=k)
    parts = [frozenset(range(g.n))]
    cuts: list[Cut] = []
    progress = True
    while progress:
        progress = False
        for part in sorted(parts, key=min):
            if len(part) < 2 * q:
                continue
            res = is_unbreakable(g, part, q - 1, k)
            if res.unbreakable:
                continue
            left = part & res.witness.side
            right = part - res.witness.side
            parts.remove(part)
            parts.extend([left, right])
            cuts.append(res.witness)
            progress = True
            break
    return Decomposition(
        parts=tuple(sorted(parts, key=min)), cuts=tuple(cuts), q=q, k=k
    )


@dataclass(frozen=True)
class CutBoundReport:
    bound: int
    demand_pair_count: int
    cuts_checked: int
    violations: tuple[frozenset, ...]


def check_kcritical_cut_bound(
    h: DiGraph, k: int, sample_limit: int | None = None, seed: int = 0
) -> CutBoundReport:
    """Certificate check: small out-cuts of a k-critical graph have small in-size.

    For every cut side L with |out-boundary| <= k the in-boundary stays
    within 4k|P| where P are the demand pairs (each pair's two path families
    cross back at most 2k times).  Violations are reported, not raised.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    pair_count = len(demand_pairs(h, k).pairs)
    bound = 4 * k * pair_count
    n = h.n
    total_sides = (1 << n) - 2 if n >= 1 else 0
    if sample_limit is None or total_sides <= sample_limit:
        masks = range(1, (1 << n) - 1)
    else:
        rng = random.Random(seed)
        masks = sorted(rng.sample(range(1, (1 << n) - 1), sample_limit))
    checked = 0
    violations = []
    for mask in masks:
        side = frozenset(v for v in range(n) if (mask >> v) & 1)
        out_size = len(boundary_edges(h, side, "out"))
        if out_size > k:
            continue
        checked += 1
        in_size = len(boundary_edges(h, side, "in"))
        if in_size > bound:
            violations.append(side)
    return CutBoundReport(
        bound=bound,
        demand_pair_count=pair_count,
        cuts_checked=checked,
        violations=tuple(violations),
    )
