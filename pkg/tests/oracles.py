"""Slow, dead-simple reference implementations used as independent oracles.

Everything here works on plain dict adjacency and python sets, on purpose:
no bitmasks, no residual graphs, no shared code with the library kernels.
"""

from itertools import combinations


def edge_list(g, banned=frozenset()):
    return [(e.id, e.tail, e.head) for e in g.edges if e.id not in banned]


def reach_ref(n, edges, sources):
    """BFS reachability over an explicit edge list (self-loops harmless)."""
    adj = {}
    for _, tail, head in edges:
        adj.setdefault(tail, set()).add(head)
    seen = set(sources)
    queue = list(seen)
    while queue:
        v = queue.pop()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def scc_sets_ref(g, banned=frozenset()):
    """SCC partition via pairwise mutual reachability (O(n^2 m))."""
    edges = edge_list(g, banned)
    reach = {v: reach_ref(g.n, edges, [v]) for v in range(g.n)}
    comps = set()
    for v in range(g.n):
        comp = frozenset(w for w in range(g.n) if w in reach[v] and v in reach[w])
        comps.add(comp)
    return comps


def strongly_connected_pair_ref(g, banned, a, b):
    edges = edge_list(g, banned)
    return b in reach_ref(g.n, edges, [a]) and a in reach_ref(g.n, edges, [b])


def is_strongly_connected_ref(g, banned=frozenset()):
    return len(scc_sets_ref(g, banned)) == 1


def flow_by_path_families(g, sources, sinks, banned=frozenset()):
    """Max edge-disjoint path count by exhaustive path-family search."""
    edges = edge_list(g, banned)
    sources = set(sources)
    sinks = set(sinks)

    def all_paths(avail):
        # simple paths from any source to any sink over available edges
        results = []

        def extend(v, used_vertices, used_edges):
            if v in sinks:
                results.append(frozenset(used_edges))
                return
            for eid, tail, head in avail:
                if tail == v and eid not in used_edges and head not in used_vertices:
                    extend(head, used_vertices | {head}, used_edges + [eid])

        for s in sources:
            extend(s, {s}, [])
        return results

    def best(avail):
        paths = all_paths(avail)
        top = 0
        for path in paths:
            rest = [e for e in avail if e[0] not in path]
            top = max(top, 1 + best(rest))
        return top

    return best(edges)


def min_cut_ref(g, sources, sinks):
    """Minimum out-boundary over all (X, Y)-separating sides (2^n scan)."""
    sources = set(sources)
    sinks = set(sinks)
    best = None
    for r in range(g.n + 1):
        for side in combinations(range(g.n), r):
            side = set(side)
            if not sources <= side or side & sinks:
                continue
            size = sum(
                1 for e in g.edges if e.tail in side and e.head not in side
            )
            if best is None or size < best:
                best = size
    return best


def all_min_cut_sides(g, sources, sinks):
    lam = min_cut_ref(g, sources, sinks)
    sources = set(sources)
    sinks = set(sinks)
    sides = []
    for r in range(g.n + 1):
        for side in combinations(range(g.n), r):
            side = set(side)
            if not sources <= side or side & sinks:
                continue
            size = sum(
                1 for e in g.edges if e.tail in side and e.head not in side
            )
            if size == lam:
                sides.append(frozenset(side))
    return lam, sides


def maximal_min_cut_side(g, sources, sinks):
    """The unique inclusion-maximal minimum-cut side (asserts uniqueness)."""
    _, sides = all_min_cut_sides(g, sources, sinks)
    maximal = [
        s for s in sides if not any(s < other for other in sides)
    ]
    assert len(maximal) == 1, f"min-cut sides not a lattice? {maximal}"
    return maximal[0]


def symmetric_connectivity_ref(g, s, t, k):
    if k == 0:
        return 0
    fwd = flow_by_path_families(g, [s], [t])
    bwd = flow_by_path_families(g, [t], [s])
    return min(fwd, bwd, k)


def fault_sets_ref(edge_ids, k):
    """All fault sets of size <= k (unordered; for containment checks)."""
    ids = sorted(edge_ids)
    for r in range(min(k, len(ids)) + 1):
        for combo in combinations(ids, r):
            yield frozenset(combo)


def ft_critical_ref(g, eid, pairs, k, global_variant=False):
    """Reference k-fault criticality over explicit pair lists."""
    others = [e for e in g.edge_ids() if e != eid]
    for fault in fault_sets_ref(others, k):
        if global_variant:
            if is_strongly_connected_ref(g, fault) and not is_strongly_connected_ref(
                g, fault | {eid}
            ):
                return True
            continue
        for a, b in pairs:
            if strongly_connected_pair_ref(g, fault, a, b) and not (
                strongly_connected_pair_ref(g, fault | {eid}, a, b)
            ):
                return True
    return False


def verify_ft_ref(g, kept, pairs, k, global_variant=False):
    """Reference verifier: H preserves every pair under every fault set."""
    kept = set(kept)
    for fault in fault_sets_ref(g.edge_ids(), k):
        h_banned = fault | (set(g.edge_ids()) - kept)
        if global_variant:
            if is_strongly_connected_ref(g, fault) != is_strongly_connected_ref(
                g, h_banned
            ):
                return False
            continue
        for a, b in pairs:
            if strongly_connected_pair_ref(g, fault, a, b) != (
                strongly_connected_pair_ref(g, h_banned, a, b)
            ):
                return False
    return True


def unbreakable_ref(g, terminals, q, k):
    """Direct Definition check over all 2^n sides."""
    U = set(terminals)
    for r in range(g.n + 1):
        for side in combinations(range(g.n), r):
            side = set(side)
            out = sum(1 for e in g.edges if e.tail in side and e.head not in side)
            inn = sum(1 for e in g.edges if e.head in side and e.tail not in side)
            if min(out, inn) > k:
                continue
            if len(side & U) > q and len(U - side) > q:
                return False
    return True
