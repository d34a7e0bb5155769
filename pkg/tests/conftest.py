import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from sccpreserve.digraph import DiGraph


def three_cycle() -> DiGraph:
    return DiGraph(3, [(0, 1), (1, 2), (2, 0)])


def bidirected_triangle() -> DiGraph:
    return DiGraph(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)])


def bidirected_k4() -> DiGraph:
    edges = []
    for u in range(4):
        for v in range(4):
            if u != v:
                edges.append((u, v))
    return DiGraph(4, edges)


def directed_path(n: int) -> DiGraph:
    return DiGraph(n, [(i, i + 1) for i in range(n - 1)])


def diamond() -> DiGraph:
    # s=0, a=1, b=2, t=3
    return DiGraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def diamond_with_chord() -> DiGraph:
    # diamond plus a->b
    return DiGraph(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)])
