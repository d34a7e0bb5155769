"""Important-cut machinery: container construction, exhaustive enumeration,
and the anti-isolation checker.

The container iterates farthest minimum cuts: starting from G_0 = G, each
round adds one artificial source edge (x, head(e)) per boundary edge e of
the current farthest min cut and recomputes.  After k* = k - flow rounds the
final side contains the side of every important (X, Y)-cut of size <= k,
and its boundary has at most flow * 2^{k*} <= 2^{k-1} edges.  When the flow
already exceeds k there are no important cuts of size <= k at all and the
result carries a sentinel status instead of a cut.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import limits
from .digraph import DiGraph, out_masks, reach_mask, set_to_mask
from .errors import InputError
from .flowcut import Cut, _Residual, _check_terminals, boundary_edges

NO_SMALL_CUTS = "no_important_cuts"
OK = "ok"


@dataclass(frozen=True)
class ContainerResult:
    """Outcome of the container construction.

    ``status == 'ok'``: ``cut`` holds the container, ``nested_sides`` the
    chain S_0 <= S_1 <= ... whose last element is the container side.
    ``status == 'no_important_cuts'``: flow(X, Y) > k, so every guarantee is
    vacuous; call sites treat the container side as empty.
    """

    status: str
    cut: Cut | None
    flow_value: int
    k_star: int | None
    nested_sides: tuple[frozenset, ...]

    @property
    def side(self) -> frozenset:
        return self.cut.side if self.cut is not None else frozenset()

    @property
    def boundary(self) -> frozenset:
        return self.cut.boundary if self.cut is not None else frozenset()


def _farthest_side(g: DiGraph, X, Y, extra_heads) -> tuple[frozenset, int, list]:
    """Farthest min-cut side of g plus unit source edges to extra_heads."""
    net = _Residual(g, X, Y, extra_source_heads=extra_heads)
    value = net.run()
    reaching = net.sink_reaching()
    side = frozenset(v for v in range(g.n) if v not in reaching)
    return side, value, reaching


def important_cut_container(
    g: DiGraph, X, Y, k: int, direction: str = "out"
) -> ContainerResult:
    """A single cut whose side contains every important (X, Y)-cut side.

    For ``direction='in'`` the computation runs on the reversed graph:
    in-reachable cuts of g are exactly the out-reachable cuts of reverse(g),
    and edge ids are shared, so the boundary is reported against g directly.
    """
    if k < 0:
        raise InputError("k must be nonnegative")
    if direction == "in":
        res = important_cut_container(g.reverse(), X, Y, k, "out")
        if res.cut is None:
            return res
        cut = Cut(
            side=res.cut.side,
            direction="in",
            boundary=boundary_edges(g, res.cut.side, "in"),
        )
        return ContainerResult(res.status, cut, res.flow_value, res.k_star, res.nested_sides)
    if direction != "out":
        raise InputError(f"bad direction {direction!r}")

    X, Y = _check_terminals(g, X, Y)
    side, lam, _ = _farthest_side(g, X, Y, ())
    if lam > k:
        return ContainerResult(NO_SMALL_CUTS, None, lam, None, ())
    k_star = k - lam
    sides = [side]
    extra_heads: list[int] = []
    for _ in range(k_star):
        # one unit source edge per boundary edge of the current cut,
        # counting previously added artificial edges that cross it too
        cur = sides[-1]
        new_heads = [e.head for e in g.edges if e.tail in cur and e.head not in cur]
        new_heads.extend(v for v in extra_heads if v not in cur)
        extra_heads.extend(sorted(new_heads))
        nxt, _, _ = _farthest_side(g, X, Y, tuple(extra_heads))
        sides.append(nxt)
    final = sides[-1]
    cut = Cut(side=final, direction="out", boundary=boundary_edges(g, final, "out"))
    return ContainerResult(OK, cut, lam, k_star, tuple(sides))


def _out_reachable_side(adj, x_mask: int, side_mask: int) -> bool:
    """Every side vertex reachable from X without leaving the side."""
    inside = [adj[v] & side_mask for v in range(len(adj))]
    return reach_mask(inside, x_mask) == side_mask


def enumerate_important_cuts(
    g: DiGraph, X, Y, k: int, direction: str = "out", max_n: int | None = None
) -> tuple[Cut, ...]:
    """All important (X, Y)-cuts with boundary size <= k, by 2^n filtering.

    This is the brute-force oracle the container is tested against; it is
    only meant for small graphs (default guard n <= 16).
    """
    if direction == "in":
        rev = enumerate_important_cuts(g.reverse(), X, Y, k, "out", max_n)
        return tuple(
            Cut(c.side, "in", boundary_edges(g, c.side, "in")) for c in rev
        )
    if direction != "out":
        raise InputError(f"bad direction {direction!r}")
    X, Y = _check_terminals(g, X, Y)
    limits.guard_side_enumeration(g.n, max_n)
    if k < 0:
        raise InputError("k must be nonnegative")

    x_mask = set_to_mask(X)
    y_mask = set_to_mask(Y)
    adj = out_masks(g)
    candidates = []  # (side_mask, boundary frozenset)
    for side_mask in range(1, 1 << g.n):
        if (side_mask & x_mask) != x_mask or (side_mask & y_mask):
            continue
        if not _out_reachable_side(adj, x_mask, side_mask):
            continue
        boundary = frozenset(
            e.id
            for e in g.edges
            if (side_mask >> e.tail) & 1 and not (side_mask >> e.head) & 1
        )
        if len(boundary) <= k:
            candidates.append((side_mask, boundary))
    cuts = []
    for side_mask, boundary in candidates:
        important = True
        for other_mask, other_boundary in candidates:
            if (
                other_mask != side_mask
                and (other_mask & side_mask) == side_mask
                and len(other_boundary) <= len(boundary)
            ):
                important = False
                break
        if important:
            side = frozenset(v for v in range(g.n) if (side_mask >> v) & 1)
            cuts.append(Cut(side=side, direction="out", boundary=boundary))
    cuts.sort(key=lambda c: sorted(c.side))
    return tuple(cuts)


@dataclass(frozen=True)
class AntiIsolationReport:
    valid_instance: bool
    bound_holds: bool
    r: int
    limit: int


def check_anti_isolation(
    g: DiGraph, s: int, sinks, faults, k: int
) -> AntiIsolationReport:
    """Check an anti-isolation instance: s reaches sink j in g-F_i iff i = j.

    For every valid instance the number of sinks r is at most 2^k; the
    report carries both the validity and the bound so searches for
    counterexamples can distinguish "invalid instance" from "bound broken".
    """
    sinks = list(sinks)
    faults = [frozenset(f) for f in faults]
    if len(sinks) != len(faults):
        raise InputError("one fault set per sink required")
    g._check_vertex(s)
    for t in sinks:
        g._check_vertex(t)
    for f in faults:
        if len(f) > k:
            raise InputError(f"fault set larger than k={k}")
        for eid in f:
            g.edge(eid)
    r = len(sinks)
    valid = True
    for i, f in enumerate(faults):
        reach = reach_mask(out_masks(g, f), 1 << s)
        for j, t in enumerate(sinks):
            if bool((reach >> t) & 1) != (i == j):
                valid = False
                break
        if not valid:
            break
    limit = 1 << k
    return AntiIsolationReport(
        valid_instance=valid, bound_holds=(r <= limit), r=r, limit=limit
    )
