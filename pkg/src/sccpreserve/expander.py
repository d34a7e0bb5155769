"""Unbreakability oracle, sparse-cut search, and the directed expander hierarchy.

A terminal set U is (q, k)-unbreakable if no cut with at most k boundary
edges (in either direction) leaves more than q terminals on both sides.
The oracle reduces this to flows: U is breakable iff some ordered pair of
disjoint (q+1)-subsets A, B of U has flow(A, B) <= k; the failing pair's
min cut is returned as a witness.

The hierarchy is built top-down: keep shrinking the terminal set U along
sparse cuts (ratio boundary / smaller-terminal-side <= phi) until U is
phi-expanding, emit U as the top level, then recurse on the strongly
connected components of the rest.  phi-expanding terminal sets are
(ceil(k/phi), k)-unbreakable, every SCC below the top level has at most
half the vertices, and the level count is at most ceil(log2 n) + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from . import limits
from .digraph import DiGraph, out_masks, scc, scc_masks, set_to_mask
from .errors import CapabilityError, InputError
from .flowcut import Cut, boundary_edges, farthest_min_cut, flow_value
from .variants import fault_sets_colex


@dataclass(frozen=True)
class HierarchyParams:
    q: int
    k: int
    phi: Fraction = Fraction(1, 2)
    exact_cut_limit: int = limits.DEFAULT_EXACT_CUT_LIMIT

    def __post_init__(self):
        phi = Fraction(self.phi)
        object.__setattr__(self, "phi", phi)
        if not (0 < phi <= 1):
            raise InputError("phi must be in (0, 1]")
        if self.q < 1 or self.k < 1:
            raise InputError("q and k must be positive")
        if self.q * phi < self.k:
            raise InputError(f"need q >= k/phi (q={self.q}, k={self.k}, phi={phi})")


@dataclass(frozen=True)
class UnbreakabilityResult:
    unbreakable: bool
    witness: Cut | None = None


def is_unbreakable(
    g: DiGraph, terminals, q: int, k: int, pair_limit: int | None = None
) -> UnbreakabilityResult:
    """Flow-reduction unbreakability test with a min-cut witness on failure."""
    U = frozenset(terminals)
    for v in U:
        g._check_vertex(v)
    if q < 0 or k < 0:
        raise InputError("q and k must be nonnegative")
    if len(U) <= 2 * q + 1:
        return UnbreakabilityResult(True)  # both sides can never exceed q
    cap = pair_limit if pair_limit is not None else limits.max_subset_pairs()
    su = sorted(U)
    pairs = comb(len(U), q + 1) * comb(len(U) - q - 1, q + 1)
    if pairs > cap:
        raise CapabilityError(
            f"unbreakability check needs {pairs} subset pairs (|U|={len(U)}, "
            f"q={q}), limit is {cap}"
        )
    for a_side in combinations(su, q + 1):
        rest = [v for v in su if v not in a_side]
        for b_side in combinations(rest, q + 1):
            if flow_value(g, a_side, b_side, cap=k + 1) <= k:
                witness = farthest_min_cut(g, a_side, b_side)
                return UnbreakabilityResult(False, witness)
    return UnbreakabilityResult(True)


def giant_component_check(
    g: DiGraph, terminals, q: int, k: int, limit: int | None = None
) -> bool:
    """Exhaustive fault sweep: every <=k-fault graph keeps a giant component.

    Caller certifies that the terminal set is (q, k)-unbreakable; this
    confirms that some SCC of g-F retains at least |U| - 2q terminals for
    every fault set F of size at most k.
    """
    U = frozenset(terminals)
    for v in U:
        g._check_vertex(v)
    target = len(U) - 2 * q
    if target <= 0:
        return True
    limits.guard_fault_sets(g.m, k, limit)
    u_mask = set_to_mask(U)
    ids = sorted(g.edge_ids())
    for fault in fault_sets_colex(ids, k):
        comp = scc_masks(out_masks(g, frozenset(fault)))
        ok = False
        seen = 0
        for v in range(g.n):
            bit = 1 << v
            if seen & bit:
                continue
            seen |= comp[v]
            if (comp[v] & u_mask).bit_count() >= target:
                ok = True
                break
        if not ok:
            return False
    return True


def _side_ratio(g: DiGraph, side_mask: int, u_mask: int, heads_with_mult):
    """(boundary size, min terminal side) of one cut, or None if U not separated."""
    inside = (side_mask & u_mask).bit_count()
    outside = (u_mask & ~side_mask).bit_count()
    small = min(inside, outside)
    if small == 0:
        return None
    boundary = 0
    bits = side_mask
    while bits:
        b = bits & -bits
        bits ^= b
        for h in heads_with_mult[b.bit_length() - 1]:
            if not (side_mask >> h) & 1:
                boundary += 1
    return boundary, small


def sparsest_cut_wrt(
    g: DiGraph, terminals, phi, exact_limit: int | None = None
) -> Cut | None:
    """Exhaustive search for a cut with ratio |boundary| / min-side <= phi.

    Returns the minimum-ratio cut (smallest side bitmask among ties) when its
    ratio is at most phi, otherwise None, meaning the terminal set is
    phi-expanding.
    """
    U = frozenset(terminals)
    if len(U) < 2:
        raise InputError("need at least two terminals")
    for v in U:
        g._check_vertex(v)
    cap = exact_limit if exact_limit is not None else limits.exact_cut_limit()
    if g.n > cap:
        raise CapabilityError(
            f"exact sparse-cut search infeasible at n={g.n} (limit {cap})"
        )
    phi = Fraction(phi)
    u_mask = set_to_mask(U)
    heads = [[] for _ in range(g.n)]
    for e in g.edges:
        if e.tail != e.head:
            heads[e.tail].append(e.head)
    best = None  # (boundary, small, mask)
    for side_mask in range(1, (1 << g.n) - 1):
        scored = _side_ratio(g, side_mask, u_mask, heads)
        if scored is None:
            continue
        boundary, small = scored
        if best is None or boundary * best[1] < best[0] * small:
            best = (boundary, small, side_mask)
    if best is None:
        return None
    boundary, small, mask = best
    if Fraction(boundary, small) > phi:
        return None
    side = frozenset(v for v in range(g.n) if (mask >> v) & 1)
    return Cut(side=side, direction="out", boundary=boundary_edges(g, side, "out"))


def _heuristic_sparse_cut(g: DiGraph, terminals, phi, rng) -> Cut | None:
    """Randomized fallback past the exact enumeration limit.

    Seeds candidate sides with min cuts between random terminal pairs, then
    hill-climbs single-vertex moves to lower the ratio.  Finding nothing is
    not a certificate of expansion; hierarchies built this way carry
    unverified certificates.
    """
    U = sorted(terminals)
    phi = Fraction(phi)
    u_mask = set_to_mask(U)
    heads = [[] for _ in range(g.n)]
    for e in g.edges:
        if e.tail != e.head:
            heads[e.tail].append(e.head)
    full = (1 << g.n) - 1

    def ratio_of(mask):
        scored = _side_ratio(g, mask, u_mask, heads)
        if scored is None:
            return None
        return Fraction(scored[0], scored[1])

    candidates = []
    for _ in range(min(20, len(U) * (len(U) - 1))):
        a, b = rng.sample(U, 2)
        candidates.append(set_to_mask(farthest_min_cut(g, [a], [b]).side))
    for _ in range(10):
        size = rng.randrange(1, g.n)
        candidates.append(set_to_mask(rng.sample(range(g.n), size)))
    best_mask, best_ratio = None, None
    for mask in candidates:
        for _ in range(2 * g.n):
            cur = ratio_of(mask)
            improved = False
            for v in range(g.n):
                flipped = mask ^ (1 << v)
                if flipped == 0 or flipped == full:
                    continue
                r = ratio_of(flipped)
                if r is not None and (cur is None or r < cur):
                    mask, cur = flipped, r
                    improved = True
            if not improved:
                break
        if cur is not None and (best_ratio is None or cur < best_ratio):
            best_mask, best_ratio = mask, cur
    if best_ratio is not None and best_ratio <= phi:
        side = frozenset(v for v in range(g.n) if (best_mask >> v) & 1)
        return Cut(side=side, direction="out", boundary=boundary_edges(g, side, "out"))
    return None


@dataclass(frozen=True)
class LevelCertificate:
    level: int  # 1-based, level 1 is the deepest
    component: frozenset
    terminals: frozenset
    unbreakable: bool | None  # None = not verified
    q: int
    k: int


@dataclass(frozen=True)
class ExpanderHierarchy:
    levels: tuple[frozenset, ...]  # V_1 .. V_ell, top level last
    certificates: tuple[LevelCertificate, ...]
    params: HierarchyParams
    exact: bool  # every sparse-cut search ran exhaustively

    @property
    def depth(self) -> int:
        return len(self.levels)


def _expanding_terminals(sub: DiGraph, params: HierarchyParams, rng, state) -> set:
    """Shrink U = V(sub) along sparse cuts until it is phi-expanding."""
    terminals = set(range(sub.n))
    while len(terminals) >= 2:
        if sub.n <= params.exact_cut_limit:
            cut = sparsest_cut_wrt(sub, terminals, params.phi, params.exact_cut_limit)
        else:
            state["exact"] = False
            cut = _heuristic_sparse_cut(sub, terminals, params.phi, rng)
        if cut is None:
            break
        side = cut.side
        exits = {sub.edge(eid).tail for eid in cut.boundary}
        before = len(terminals)
        if len(side) <= sub.n / 2:
            terminals = (terminals - side) | exits
        else:
            terminals = (terminals - (set(range(sub.n)) - side)) | exits
        if len(terminals) >= before:
            raise AssertionError("terminal set did not shrink; phi too large")
    return terminals


def build_hierarchy(
    g: DiGraph,
    params: HierarchyParams,
    verify_certificates: bool = True,
    seed: int = 0,
) -> ExpanderHierarchy:
    """Top-down directed expander hierarchy (levels partition V(g)).

    Each level's terminal set is phi-expanding inside every SCC of the
    prefix-induced subgraph, hence (q, k)-unbreakable there.  With
    ``verify_certificates`` every certificate is confirmed through the
    unbreakability oracle (desk-scale only).
    """
    rng = random.Random(seed)
    state = {"exact": True}

    def build(vertex_set: frozenset) -> list[set]:
        if not vertex_set:
            return []
        sub, to_parent = g.induced(vertex_set)
        part = scc(sub)
        if len(part.components) > 1:
            stacks = [
                build(frozenset(to_parent[v] for v in comp))
                for comp in part.components
            ]
            return _merge_bottom(stacks)
        local_top = _expanding_terminals(sub, params, rng, state)
        top = {to_parent[v] for v in local_top}
        rest = frozenset(vertex_set) - top
        if not rest:
            return [top]
        rsub, r_to_parent = g.induced(rest)
        stacks = [
            build(frozenset(r_to_parent[v] for v in comp))
            for comp in scc(rsub).components
        ]
        return _merge_bottom(stacks) + [top]

    level_sets = build(frozenset(range(g.n)))
    levels = tuple(frozenset(s) for s in level_sets)
    certificates = _certify(g, levels, params, verify_certificates)
    return ExpanderHierarchy(
        levels=levels, certificates=certificates, params=params, exact=state["exact"]
    )


def _merge_bottom(stacks: list[list[set]]) -> list[set]:
    height = max((len(s) for s in stacks), default=0)
    merged: list[set] = [set() for _ in range(height)]
    for stack in stacks:
        for i, level in enumerate(stack):
            merged[i] |= level
    return merged


def _certify(g, levels, params, verify) -> tuple[LevelCertificate, ...]:
    certs = []
    prefix: set = set()
    for i, level in enumerate(levels, start=1):
        prefix |= level
        sub, to_parent = g.induced(prefix)
        for comp in scc(sub).components:
            component = frozenset(to_parent[v] for v in comp)
            terminals = component & level
            if not terminals:
                continue
            flag = None
            if verify:
                csub, c_to_parent = g.induced(component)
                local = {c_to_parent.index(v) for v in terminals}
                flag = is_unbreakable(csub, local, params.q, params.k).unbreakable
            certs.append(
                LevelCertificate(
                    level=i,
                    component=component,
                    terminals=frozenset(terminals),
                    unbreakable=flag,
                    q=params.q,
                    k=params.k,
                )
            )
    return tuple(certs)
