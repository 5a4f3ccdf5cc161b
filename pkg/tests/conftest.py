import itertools

import pytest

from ordered_coloring import Instance, ListAssignment, OrderedGraph, is_isomorphic


def brute_contains(g: OrderedGraph, h: OrderedGraph):
    """Independent oracle for pattern containment: try every vertex subset."""
    if h.n > g.n:
        return None
    for combo in itertools.combinations(g.vertices, h.n):
        if is_isomorphic(g.induced(combo), h):
            return frozenset(combo)
    return None


def graph(positions, edges=()):
    """Small-graph builder: positions is a dict or list of (id, pos)."""
    items = positions.items() if isinstance(positions, dict) else positions
    return OrderedGraph(items, edges)


def instance(positions, edges=(), lists=None):
    g = graph(positions, edges)
    if lists is None:
        return Instance.with_full_lists(g)
    full = {v: lists.get(v, (1, 2, 3)) for v in g.vertices}
    return Instance(g, ListAssignment(full))


def path_graph(n):
    return graph({i: i for i in range(1, n + 1)}, [(i, i + 1) for i in range(1, n)])


def complete_graph(n):
    return graph(
        {i: i for i in range(1, n + 1)},
        [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)],
    )


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def triangle():
    return complete_graph(3)
