"""Greedy fault-tolerant preserver constructions and the A-series reductions.

The greedy loop starts from the full edge set and keeps deleting edges whose
removal leaves the current graph a valid preserver of itself; transitivity
makes the result a preserver of the input.  Criticality of one edge is an
exhaustive search over fault sets, so the loop caches, per edge, the last
witness (pair, fault set) that proved it critical: while a cached witness
revalidates, the full enumeration is skipped.

Scan order is ascending edge id, repeated until a full pass removes nothing.
Different scan orders give different edge-minimal preservers; all of them
pass the exhaustive verifier, and this one is fixed for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import limits
from .digraph import DiGraph, scc
from .errors import InputError
from .expander import HierarchyParams, build_hierarchy
from .variants import ConnectivityOracle, VariantSpec, fault_sets_colex


@dataclass(frozen=True)
class CriticalityResult:
    critical: bool
    witness: tuple | None = None  # (pair, fault frozenset); pair None for global


@dataclass(frozen=True)
class PreserverResult:
    kept_edges: frozenset
    variant: str
    params: dict
    stats: dict
    provenance: str

    @property
    def size(self) -> int:
        return len(self.kept_edges)


def _witness_pair(oracle: ConnectivityOracle, active, fault, removed):
    """Extract the broken pair for a confirmed witness (None for global)."""
    if oracle.spec.kind == "global":
        return None
    state_a = oracle.state(active, fault)
    state_b = oracle.state(active, set(fault) | {removed})
    return oracle.first_broken_pair(state_a, state_b)


def is_ft_critical(
    g: DiGraph, edge_id: int, spec: VariantSpec, k: int, limit: int | None = None
) -> CriticalityResult:
    """Exhaustive k-fault criticality of one edge.

    Critical means: some protected pair is strongly connected in g-F but not
    in (g-e)-F for a fault set of size at most k (for the global variant,
    g-F strongly connected but (g-e)-F not).  Fault sets containing e never
    witness anything and are skipped; the first witness in colex order is
    returned.
    """
    e = g.edge(edge_id)
    if e.tail == e.head:
        return CriticalityResult(False)  # self-loops never carry connectivity
    if k < 0:
        raise InputError("k must be nonnegative")
    limits.guard_fault_sets(g.m - 1, k, limit)
    oracle = ConnectivityOracle(g, spec)
    active = g.edge_ids()
    universe = sorted(active - {edge_id})
    for fault in fault_sets_colex(universe, k):
        base = oracle.state(active, fault)
        if oracle.changed(base, active, fault, edge_id):
            pair = _witness_pair(oracle, active, fault, edge_id)
            return CriticalityResult(True, (pair, frozenset(fault)))
    return CriticalityResult(False)


class _GreedyRun:
    """One greedy minimization with witness and baseline-state caching."""

    def __init__(self, g: DiGraph, spec: VariantSpec, k: int, limit: int | None):
        limits.guard_fault_sets(g.m, k, limit)
        self.oracle = ConnectivityOracle(g, spec)
        self.g = g
        self.k = k
        self.kept = set(g.edge_ids())
        self.witness: dict[int, tuple] = {}
        self.base_states: dict[tuple, object] = {}
        self.removal_attempts = 0
        self.oracle_calls = 0

    def _base(self, fault: tuple):
        state = self.base_states.get(fault)
        if state is None:
            state = self.oracle.state(self.kept, fault)
            self.base_states[fault] = state
        return state

    def _critical(self, eid: int) -> bool:
        edge = self.g.edge(eid)
        if edge.tail == edge.head:
            return False
        cached = self.witness.get(eid)
        if cached is not None and all(f in self.kept for f in cached):
            self.oracle_calls += 1
            if self.oracle.changed(self._base(cached), self.kept, cached, eid):
                return True
        universe = sorted(self.kept - {eid})
        for fault in fault_sets_colex(universe, self.k):
            self.oracle_calls += 1
            if self.oracle.changed(self._base(fault), self.kept, fault, eid):
                self.witness[eid] = fault
                return True
        return False

    def run(self) -> frozenset:
        changed = True
        while changed:
            changed = False
            for eid in sorted(self.kept):
                self.removal_attempts += 1
                if self._critical(eid):
                    continue
                self.kept.discard(eid)
                self.witness.pop(eid, None)
                self.base_states.clear()
                changed = True
        return frozenset(self.kept)


def greedy_preserver(
    g: DiGraph, spec: VariantSpec, k: int, limit: int | None = None
) -> PreserverResult:
    """Edge-minimal k-FT preserver for the given variant."""
    if k < 0:
        raise InputError("k must be nonnegative")
    spec.validate(g)
    run = _GreedyRun(g, spec, k, limit)
    kept = run.run()
    return PreserverResult(
        kept_edges=kept,
        variant=spec.kind,
        params={"k": k, **spec.describe()},
        stats={
            "input_edges": g.m,
            "output_edges": len(kept),
            "removal_attempts": run.removal_attempts,
            "oracle_calls": run.oracle_calls,
        },
        provenance="greedy",
    )


def sscp(g: DiGraph, s: int, k: int, limit: int | None = None) -> PreserverResult:
    """k-FT single-source connectivity preserver rooted at s (greedy)."""
    return greedy_preserver(g, VariantSpec.single_source(s), k, limit)


def hierarchy_preserver(
    g: DiGraph, k: int, params: HierarchyParams | None = None
) -> PreserverResult:
    """All-pairs preserver via sourcewise preservers over an expander hierarchy.

    Default parameters follow the existential construction: a hierarchy for
    (2k, k)-unbreakable sets (phi = 1/2), then one greedy sourcewise
    preserver per (level, SCC of the prefix graph), unioned over all levels.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    if g.n == 0:
        return PreserverResult(
            frozenset(), "all_pairs", {"k": k}, {"input_edges": 0, "output_edges": 0},
            "hierarchy",
        )
    if params is None:
        # k=0 still needs valid params; the level structure depends on phi only
        params = HierarchyParams(q=max(2 * k, 2), k=max(k, 1))
    hierarchy = build_hierarchy(g, params, verify_certificates=False)
    kept: set = set()
    pieces = 0
    prefix: set = set()
    for level in hierarchy.levels:
        prefix |= level
        sub, to_parent = g.induced(prefix)
        for comp in scc(sub).components:
            component = frozenset(to_parent[v] for v in comp)
            terminals = component & level
            if not terminals:
                continue
            csub, c_to_parent = g.induced(component)
            local_index = {v: i for i, v in enumerate(c_to_parent)}
            local_terminals = frozenset(local_index[v] for v in terminals)
            piece = greedy_preserver(csub, VariantSpec.sourcewise(local_terminals), k)
            kept |= piece.kept_edges
            pieces += 1
    return PreserverResult(
        kept_edges=frozenset(kept),
        variant="all_pairs",
        params={"k": k, "q": params.q, "phi": str(params.phi)},
        stats={
            "input_edges": g.m,
            "output_edges": len(kept),
            "levels": hierarchy.depth,
            "pieces": pieces,
        },
        provenance="hierarchy",
    )


def global_from_single_source(g: DiGraph, k: int) -> PreserverResult:
    """Global k-FT preserver: a single-source preserver rooted anywhere."""
    if g.n == 0:
        raise InputError("need at least one vertex")
    inner = sscp(g, 0, k)
    return PreserverResult(
        kept_edges=inner.kept_edges,
        variant="global",
        params={"k": k, "root": 0},
        stats=inner.stats,
        provenance="global_from_single_source",
    )


def st_from_global(g: DiGraph, s: int, t: int, k: int, global_builder) -> PreserverResult:
    """s-t k-FT preserver from two global preservers on augmented graphs.

    G1 adds (v, s) and (t, v) for every v; G2 adds (s, v) and (v, t).  The
    global builder runs on each, and the union of both outputs intersected
    with E(g) preserves s-t strong connectivity under k faults.
    """
    if s == t:
        raise InputError("s and t must differ")
    g._check_vertex(s)
    g._check_vertex(t)
    original = g.edge_ids()
    g1 = g.add_edges([(v, s) for v in range(g.n)] + [(t, v) for v in range(g.n)])
    g2 = g.add_edges([(s, v) for v in range(g.n)] + [(v, t) for v in range(g.n)])
    h1 = global_builder(g1, k)
    h2 = global_builder(g2, k)
    kept = (frozenset(h1.kept_edges) | frozenset(h2.kept_edges)) & original
    return PreserverResult(
        kept_edges=kept,
        variant="st",
        params={"k": k, "s": s, "t": t},
        stats={
            "input_edges": g.m,
            "output_edges": len(kept),
            "g1_output": len(h1.kept_edges),
            "g2_output": len(h2.kept_edges),
        },
        provenance="st_from_global",
    )
