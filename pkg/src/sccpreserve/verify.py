"""Ground-truth oracles: exhaustive fault-set verification, critical-edge
enumeration, cut-characterization verifiers, and strong-fault witnesses.

Fault sets range over the edges of the host graph (not the preserver), in
colex edge-id order; pairs are scanned in row-major vertex order.  The
first counterexample under that order is the one reported, and sharded
scans merge back to the same counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import limits
from .digraph import DiGraph, in_masks, out_masks, reach_mask
from .errors import CapabilityError, InputError
from .flowcut import symmetric_connectivity
from .variants import (
    GLOBAL,
    ConnectivityOracle,
    VariantSpec,
    fault_sets_colex,
)


@dataclass(frozen=True)
class Counterexample:
    pair: tuple | None  # None for the global variant
    faults: frozenset


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    counterexample: Counterexample | None = None


def _check_kept(g: DiGraph, kept_edges) -> frozenset:
    kept = frozenset(kept_edges)
    for eid in kept:
        g.edge(eid)
    return kept


def verify_ft(
    g: DiGraph,
    kept_edges,
    spec: VariantSpec,
    k: int,
    limit: int | None = None,
    shards: int = 1,
) -> VerifyResult:
    """Exhaustively check the variant's k-FT condition for H = g[kept_edges].

    The fault universe is split into ``shards`` contiguous colex ranges that
    are scanned independently; the merged verdict reports the globally
    minimal counterexample, so the shard count never changes the answer.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    if shards < 1:
        raise InputError("shards must be positive")
    kept = _check_kept(g, kept_edges)
    spec.validate(g)
    limits.guard_fault_sets(g.m, k, limit)
    oracle = ConnectivityOracle(g, spec)
    active_all = g.edge_ids()
    ids = sorted(active_all)

    def scan(lo: int, hi: int) -> tuple[int, Counterexample] | None:
        """First counterexample with colex index in [lo, hi)."""
        for index, fault in enumerate(fault_sets_colex(ids, k)):
            if index < lo:
                continue
            if index >= hi:
                return None
            state_g = oracle.state(active_all, fault)
            state_h = oracle.state(kept, fault)
            if not oracle.breaks(state_g, state_h):
                continue
            pair = None
            if spec.kind != GLOBAL:
                pair = oracle.first_broken_pair(state_g, state_h)
            return index, Counterexample(pair=pair, faults=frozenset(fault))
        return None

    total = limits.fault_set_count(g.m, k)
    bounds = [(j * total) // shards for j in range(shards + 1)]
    hits = []
    for j in range(shards):
        hit = scan(bounds[j], bounds[j + 1])
        if hit is not None:
            hits.append(hit)
            break  # shards are colex-contiguous: the first hit is minimal
    if hits:
        best = min(hits, key=lambda hit: hit[0])
        return VerifyResult(ok=False, counterexample=best[1])
    return VerifyResult(ok=True)


def verify_kconn(g: DiGraph, kept_edges, k: int) -> VerifyResult:
    """Check that H preserves min(lambda, k) for every vertex pair."""
    if k < 0:
        raise InputError("k must be nonnegative")
    kept = _check_kept(g, kept_edges)
    h = g.restrict_to(kept)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            want = symmetric_connectivity(g, s, t, k) if k > 0 else 0
            if want == 0:
                continue
            got = symmetric_connectivity(h, s, t, k)
            if got != want:
                return VerifyResult(
                    ok=False, counterexample=Counterexample(pair=(s, t), faults=frozenset())
                )
    return VerifyResult(ok=True)


def enumerate_critical_edges(
    g: DiGraph, spec: VariantSpec, k: int, limit: int | None = None
) -> frozenset:
    """Exact set of k-fault critical edges for the variant (test oracle)."""
    if k < 0:
        raise InputError("k must be nonnegative")
    spec.validate(g)
    limits.guard_fault_sets(g.m, k, limit)
    oracle = ConnectivityOracle(g, spec)
    active = g.edge_ids()
    base_cache: dict[tuple, object] = {}
    critical = set()
    for e in g.edges:
        if e.tail == e.head:
            continue
        for fault in fault_sets_colex(sorted(active - {e.id}), k):
            base = base_cache.get(fault)
            if base is None:
                base = oracle.state(active, fault)
                base_cache[fault] = base
            if oracle.changed(base, active, fault, e.id):
                critical.add(e.id)
                break
    return frozenset(critical)


# -- cut-characterization verifiers -----------------------------------------


def _minimal_symmetric_cuts(g: DiGraph, max_n: int | None):
    """Per ordered pair (s, t): the minimal symmetric (s, t)-cut sides.

    A cut (S, V-S) with s in S, t outside is minimal symmetric if no other
    side has a strictly smaller out-boundary (by set inclusion) while still
    separating {s, t} in one direction or the other.
    """
    limits.guard_side_enumeration(g.n, max_n)
    n = g.n
    sides = []
    for mask in range(1, (1 << n) - 1):
        boundary = frozenset(
            e.id
            for e in g.edges
            if (mask >> e.tail) & 1 and not (mask >> e.head) & 1
        )
        sides.append((mask, boundary))
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            s_bit, t_bit = 1 << s, 1 << t
            separating = [
                (mask, boundary)
                for mask, boundary in sides
                if bool(mask & s_bit) != bool(mask & t_bit)
            ]
            forward = [
                (mask, boundary)
                for mask, boundary in separating
                if mask & s_bit
            ]
            for mask, boundary in forward:
                minimal = True
                for _, other in separating:
                    if other != boundary and other < boundary:
                        minimal = False
                        break
                if minimal:
                    yield s, t, mask, boundary


def verify_ft_by_cuts(
    g: DiGraph, kept_edges, k: int, max_n: int | None = None
) -> bool:
    """Cut characterization of all-pairs k-FT preservers.

    H preserves every minimal symmetric (s, t)-cut up to the clamp k+1:
    min(|boundary in H|, k+1) must match min(|boundary in G|, k+1).
    Agrees with the flow-based ``verify_ft`` on the all-pairs variant.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    kept = _check_kept(g, kept_edges)
    for _, _, _, boundary in _minimal_symmetric_cuts(g, max_n):
        in_h = len(boundary & kept)
        in_g = len(boundary)
        if min(in_h, k + 1) != min(in_g, k + 1):
            return False
    return True


def verify_kconn_by_cuts(
    g: DiGraph, kept_edges, k: int, max_n: int | None = None
) -> bool:
    """Cut characterization of k-connectivity preservers.

    Every minimal symmetric (s, t)-cut must keep at least min(lambda(s,t), k)
    edges in H.  Agrees with the flow-based ``verify_kconn``.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    kept = _check_kept(g, kept_edges)
    lam_cache: dict[tuple, int] = {}
    for s, t, _, boundary in _minimal_symmetric_cuts(g, max_n):
        key = (min(s, t), max(s, t))
        lam = lam_cache.get(key)
        if lam is None:
            lam = symmetric_connectivity(g, key[0], key[1], k) if k > 0 else 0
            lam_cache[key] = lam
        if len(boundary & kept) < lam:
            return False
    return True


# -- strong fault-model witnesses --------------------------------------------


def _pair_strongly_connected(g: DiGraph, banned: frozenset, a: int, b: int) -> bool:
    fwd = reach_mask(out_masks(g, banned), 1 << a)
    if not (fwd >> b) & 1:
        return False
    bwd = reach_mask(in_masks(g, banned), 1 << a)
    return bool((bwd >> b) & 1)


def _all_pairs_equal(g: DiGraph, kept: frozenset, fault: frozenset) -> tuple | None:
    """First broken pair of g-F vs H-F under an explicit fault set, or None."""
    oracle = ConnectivityOracle(g, VariantSpec.all_pairs())
    state_g = oracle.state(g.edge_ids(), fault)
    state_h = oracle.state(kept, fault)
    return oracle.first_broken_pair(state_g, state_h)


def verify_bounded_degree_ft(
    g: DiGraph, kept_edges, limit: int | None = None
) -> VerifyResult:
    """Exhaustive 1-bounded-degree verification over the whole fault universe.

    Valid fault sets touch every vertex's incident edges at most once, so
    they are enumerated as matchings of the incidence structure.  The
    universe grows exponentially; the guard caps the number of fault sets.
    The witness checkers are the primary interface, this exhaustive form is
    for tiny instances only.
    """
    kept = _check_kept(g, kept_edges)
    cap = limit if limit is not None else limits.max_fault_sets()
    edges = [e for e in g.edges]
    faults: list[frozenset] = []

    def extend(idx: int, touched: frozenset, chosen: tuple):
        if len(faults) > cap:
            raise CapabilityError(
                f"1-bounded-degree fault universe exceeds {cap} sets"
            )
        faults.append(frozenset(chosen))
        for j in range(idx, len(edges)):
            e = edges[j]
            ends = {e.tail, e.head}
            if ends & touched:
                continue
            extend(j + 1, touched | ends, chosen + (e.id,))

    extend(0, frozenset(), ())
    for fault in faults:
        pair = _all_pairs_equal(g, kept, fault)
        if pair is not None:
            return VerifyResult(
                ok=False, counterexample=Counterexample(pair=pair, faults=fault)
            )
    return VerifyResult(ok=True)


def verify_color_ft(
    g: DiGraph, kept_edges, k: int = 1, limit: int | None = None
) -> VerifyResult:
    """Exhaustive k-color-fault verification over all color families.

    Every family of at most k colors fails together; the guard caps the
    number of families.  Requires a fully colored graph.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    kept = _check_kept(g, kept_edges)
    colors = sorted({e.color for e in g.edges})
    if None in [e.color for e in g.edges]:
        raise InputError("color-fault verification needs every edge colored")
    cap = limit if limit is not None else limits.max_fault_sets()
    limits.guard_fault_sets(len(colors), k, cap)
    by_color: dict[int, set] = {}
    for e in g.edges:
        by_color.setdefault(e.color, set()).add(e.id)
    for family in fault_sets_colex(colors, k):
        fault = frozenset().union(*(by_color[c] for c in family)) if family else frozenset()
        pair = _all_pairs_equal(g, kept, fault)
        if pair is not None:
            return VerifyResult(
                ok=False,
                counterexample=Counterexample(pair=pair, faults=frozenset(family)),
            )
    return VerifyResult(ok=True)


def verify_bounded_degree_witness(
    g: DiGraph, kept_edges, cross_edge: int, fault, s: int, y: int
) -> bool:
    """Check a 1-bounded-degree criticality witness for one edge.

    The fault set may touch each vertex's incident edges at most once.  The
    witness stands if s and y are strongly connected in g-F but not once
    cross_edge is also removed; a preserver must then keep cross_edge, and
    the check confirms that kept_edges does.
    """
    kept = _check_kept(g, kept_edges)
    fault = frozenset(fault)
    g.edge(cross_edge)
    g._check_vertex(s)
    g._check_vertex(y)
    incident: dict[int, int] = {}
    for eid in fault:
        e = g.edge(eid)
        for v in {e.tail, e.head}:
            incident[v] = incident.get(v, 0) + 1
    if incident and max(incident.values()) > 1:
        worst = max(incident, key=incident.get)
        raise InputError(
            f"fault set touches vertex {worst} {incident[worst]} times; "
            "1-bounded-degree faults allow one"
        )
    if not _pair_strongly_connected(g, fault, s, y):
        return False
    if _pair_strongly_connected(g, fault | {cross_edge}, s, y):
        return False
    return cross_edge in kept


def verify_color_witness(
    g: DiGraph, kept_edges, cross_edge: int, failed_color: int, s: int, y: int
) -> bool:
    """Check a 1-color-fault criticality witness for one edge.

    Failing a color removes every edge of that color; the witness stands if
    s and y stay strongly connected under the color failure but lose strong
    connectivity once cross_edge is also removed.
    """
    kept = _check_kept(g, kept_edges)
    g.edge(cross_edge)
    g._check_vertex(s)
    g._check_vertex(y)
    used_colors = {e.color for e in g.edges if e.color is not None}
    if failed_color not in used_colors:
        raise InputError(f"unknown color {failed_color}")
    fault = frozenset(e.id for e in g.edges if e.color == failed_color)
    if not _pair_strongly_connected(g, fault, s, y):
        return False
    if _pair_strongly_connected(g, fault | {cross_edge}, s, y):
        return False
    return cross_edge in kept
