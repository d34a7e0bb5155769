import math
import random
from fractions import Fraction

import pytest

from sccpreserve.digraph import DiGraph
from sccpreserve.errors import CapabilityError, InputError
from sccpreserve.expander import (
    HierarchyParams,
    build_hierarchy,
    giant_component_check,
    is_unbreakable,
    sparsest_cut_wrt,
)
from sccpreserve.families import gen_random

from conftest import bidirected_k4, directed_path
from oracles import unbreakable_ref


def test_small_terminal_sets_vacuously_unbreakable():
    g = directed_path(5)
    assert is_unbreakable(g, {0, 1, 2}, 1, 1).unbreakable  # |U| <= 2q+1


def test_path_is_breakable_with_witness():
    res = is_unbreakable(directed_path(4), {0, 1, 2, 3}, 1, 1)
    assert not res.unbreakable
    assert res.witness.side == frozenset({0, 1})
    assert res.witness.boundary == frozenset({1})


def test_k4_is_unbreakable():
    assert is_unbreakable(bidirected_k4(), {0, 1, 2, 3}, 1, 1).unbreakable


def test_unbreakable_matches_definition_enumeration():
    rng = random.Random(11)
    for trial in range(60):
        n = rng.randrange(4, 8)
        g = gen_random(n, rng.randrange(4, 14), 400 + trial)
        size = rng.randrange(2, n + 1)
        terminals = set(rng.sample(range(n), size))
        q = rng.randrange(1, 3)
        k = rng.randrange(0, 3)
        got = is_unbreakable(g, terminals, q, k).unbreakable
        assert got == unbreakable_ref(g, terminals, q, k)


def test_unbreakable_witness_is_a_real_violation():
    rng = random.Random(5)
    for trial in range(40):
        n = rng.randrange(5, 9)
        g = gen_random(n, rng.randrange(6, 16), 800 + trial)
        terminals = set(range(n))
        res = is_unbreakable(g, terminals, 1, 1)
        if res.unbreakable:
            continue
        side = res.witness.side
        assert len(res.witness.boundary) <= 1
        assert len(side & terminals) > 1 and len(terminals - side) > 1


def test_unbreakable_pair_guard():
    g = gen_random(14, 20, 0)
    with pytest.raises(CapabilityError):
        is_unbreakable(g, range(14), 2, 1, pair_limit=10)


def test_giant_component_examples():
    assert giant_component_check(bidirected_k4(), {0, 1, 2, 3}, 1, 1)
    cycle = DiGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert giant_component_check(cycle, {0, 1, 2, 3}, 1, 0)  # k=0, C=V
    assert giant_component_check(directed_path(4), {0, 1, 2, 3}, 2, 3)  # vacuous


def test_sparsest_cut_path():
    # suffix sides of a path have empty out-boundary, so ratio 0 wins;
    # {3} is the smallest-bitmask side among the ratio-0 ties
    cut = sparsest_cut_wrt(directed_path(4), {0, 1, 2, 3}, Fraction(1, 2))
    assert cut.side == frozenset({3})
    assert cut.boundary == frozenset()
    sides = [frozenset({3}), frozenset({2, 3}), frozenset({1, 2, 3})]
    assert all(
        not any(e.tail in side and e.head not in side for e in directed_path(4).edges)
        for side in sides
    )


def test_sparsest_cut_expander_absent():
    assert sparsest_cut_wrt(bidirected_k4(), {0, 1, 2, 3}, Fraction(1, 2)) is None


def test_sparsest_cut_bidirected_pair():
    g = DiGraph(2, [(0, 1), (1, 0)])
    cut = sparsest_cut_wrt(g, {0, 1}, Fraction(1, 1))
    assert cut.side == frozenset({0})
    assert len(cut.boundary) == 1


def test_sparsest_cut_guard_and_validation():
    with pytest.raises(InputError):
        sparsest_cut_wrt(directed_path(4), {0}, Fraction(1, 2))
    with pytest.raises(CapabilityError):
        sparsest_cut_wrt(gen_random(20, 30, 0), range(20), Fraction(1, 2), exact_limit=18)


def test_hierarchy_k4_single_level():
    hier = build_hierarchy(bidirected_k4(), HierarchyParams(q=2, k=1))
    assert hier.levels == (frozenset({0, 1, 2, 3}),)
    assert all(c.unbreakable for c in hier.certificates)


def test_hierarchy_single_vertex():
    hier = build_hierarchy(DiGraph(1), HierarchyParams(q=2, k=1))
    assert hier.levels == (frozenset({0}),)


def test_hierarchy_path():
    hier = build_hierarchy(directed_path(4), HierarchyParams(q=2, k=1))
    assert hier.depth <= 3
    assert all(c.unbreakable for c in hier.certificates)


def test_hierarchy_params_validated():
    with pytest.raises(InputError):
        HierarchyParams(q=1, k=2)  # q < k/phi
    with pytest.raises(InputError):
        HierarchyParams(q=2, k=1, phi=Fraction(3, 2))


def test_hierarchy_validity_random():
    rng = random.Random(23)
    for trial in range(50):
        n = rng.randrange(2, 13)
        g = gen_random(n, rng.randrange(n, 3 * n), trial, ensure_strongly_connected=bool(trial % 2))
        for k in (1, 2):
            params = HierarchyParams(q=2 * k, k=k)
            hier = build_hierarchy(g, params)
            flat = [v for level in hier.levels for v in level]
            assert sorted(flat) == list(range(n))  # levels partition V
            assert hier.depth <= math.ceil(math.log2(n)) + 1 if n > 1 else hier.depth == 1
            assert hier.exact
            for cert in hier.certificates:
                assert cert.unbreakable is True


def test_hierarchy_certificates_against_enumeration():
    rng = random.Random(29)
    for trial in range(25):
        n = rng.randrange(3, 9)
        g = gen_random(n, rng.randrange(n, 3 * n), 300 + trial)
        params = HierarchyParams(q=2, k=1)
        hier = build_hierarchy(g, params)
        for cert in hier.certificates:
            sub, to_parent = g.induced(cert.component)
            local = {to_parent.index(v) for v in cert.terminals}
            assert unbreakable_ref(sub, local, params.q, params.k)


def test_hierarchy_halving_invariant():
    # below the top level, every SCC of the remainder has at most half
    # the vertices; applied recursively down the level stack
    rng = random.Random(37)
    from sccpreserve.digraph import scc as scc_of

    for trial in range(20):
        n = rng.randrange(2, 13)
        g = gen_random(n, rng.randrange(n, 3 * n), 600 + trial,
                       ensure_strongly_connected=True)
        hier = build_hierarchy(g, HierarchyParams(q=2, k=1))
        rest = frozenset(range(n)) - hier.levels[-1]
        if not rest:
            continue
        sub, _ = g.induced(rest)
        for comp in scc_of(sub).components:
            assert len(comp) <= math.ceil(n / 2)


def test_hierarchy_heuristic_fallback():
    # cycle of 24 vertices: beyond the exact limit, the heuristic must
    # still produce a valid partition with the halving level bound
    g = DiGraph(24, [(i, (i + 1) % 24) for i in range(24)])
    params = HierarchyParams(q=2, k=1, exact_cut_limit=10)
    hier = build_hierarchy(g, params, verify_certificates=False)
    flat = sorted(v for level in hier.levels for v in level)
    assert flat == list(range(24))
    assert hier.depth <= math.ceil(math.log2(24)) + 1
    assert not hier.exact
