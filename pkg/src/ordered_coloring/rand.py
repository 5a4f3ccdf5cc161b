"""Seeded random instances for tests and the acceptance corpus.

The generator is Python's ``random.Random`` (Mersenne Twister), always
constructed from an explicit seed, so every corpus is reproducible from
the seed that names it.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import Instance, ListAssignment, OrderedGraph, contains_pattern
from .oracle import NaeInstance

_PROPER_SUBSETS = (
    frozenset((1,)),
    frozenset((2,)),
    frozenset((3,)),
    frozenset((1, 2)),
    frozenset((1, 3)),
    frozenset((2, 3)),
)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_ordered_graph(rng: random.Random, n: int, edge_prob: float) -> OrderedGraph:
    verts = [(f"v{i}", i) for i in range(1, n + 1)]
    edges = [
        (f"v{i}", f"v{j}")
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if rng.random() < edge_prob
    ]
    return OrderedGraph(verts, edges)


def random_lists(rng: random.Random, g: OrderedGraph, full_bias: float = 0.5) -> ListAssignment:
    lists = {}
    for v in g.vertices:
        if rng.random() < full_bias:
            lists[v] = frozenset((1, 2, 3))
        else:
            lists[v] = rng.choice(_PROPER_SUBSETS)
    return ListAssignment(lists)


def random_instance(
    rng: random.Random, n: int, edge_prob: float, full_bias: float = 0.5
) -> Instance:
    g = random_ordered_graph(rng, n, edge_prob)
    return Instance(g, random_lists(rng, g, full_bias))


def random_pattern_free_instance(
    rng: random.Random,
    pattern: OrderedGraph,
    n: int,
    edge_prob: float,
    full_bias: float = 0.5,
    max_tries: int = 5000,
) -> Instance:
    """Rejection-sample an instance whose graph avoids the pattern."""
    for _ in range(max_tries):
        g = random_ordered_graph(rng, n, edge_prob)
        if contains_pattern(g, pattern) is None:
            return Instance(g, random_lists(rng, g, full_bias))
    raise RuntimeError(f"no pattern-free graph found in {max_tries} tries (n={n})")


def random_forward_clique_graph(rng: random.Random, n: int, attach_prob: float = 0.7) -> OrderedGraph:
    """Build a graph in which every vertex's forward neighborhood is a
    clique, by choosing each vertex's forward neighbors as a clique among
    the later vertices. Such graphs avoid the two-forward-edge pattern."""
    names = [f"v{i}" for i in range(1, n + 1)]
    fwd: dict = {v: set() for v in names}
    for i in range(n - 2, -1, -1):
        v = names[i]
        if rng.random() >= attach_prob:
            continue
        u = names[rng.randint(i + 1, n - 1)]
        clique = {u}
        candidates = set(fwd[u])
        while candidates and rng.random() < 0.5:
            w = rng.choice(sorted(candidates))
            clique.add(w)
            candidates &= fwd[w] | {x for x in names if w in fwd[x]}
            candidates.discard(w)
            candidates = {
                x for x in candidates if all(x in fwd[y] or y in fwd[x] for y in clique)
            }
        fwd[v] = clique
    edges = [(v, u) for v, ws in fwd.items() for u in ws]
    return OrderedGraph([(v, i + 1) for i, v in enumerate(names)], edges)


def random_j16free_instance(
    rng: random.Random,
    k: int,
    l: int,
    n: int,
    full_bias: float = 0.5,
    rejection_tries: int = 400,
) -> Instance:
    """An instance avoiding the padded two-forward-edge pattern: mixes
    rejection sampling with the direct forward-clique construction (whose
    output avoids the unpadded pattern and therefore every padding)."""
    from .patterns import build_pattern

    pattern = build_pattern(f"J16:{k},{l}")
    if rng.random() < 0.5:
        for _ in range(rejection_tries):
            g = random_ordered_graph(rng, n, rng.uniform(0.3, 0.9))
            if contains_pattern(g, pattern) is None:
                return Instance(g, random_lists(rng, g, full_bias))
    g = random_forward_clique_graph(rng, n)
    assert contains_pattern(g, pattern) is None
    return Instance(g, random_lists(rng, g, full_bias))


def random_chordal_instance(
    rng: random.Random, n: int, full_bias: float = 0.5, max_clique: int = 3
) -> Instance:
    """Grow a chordal graph by attaching each new vertex to a clique inside
    an existing clique; positions are a random permutation."""
    names = [f"v{i}" for i in range(1, n + 1)]
    cliques = [set()]
    edges = []
    present: list = []
    for v in names:
        base = rng.choice(cliques)
        size = rng.randint(0, min(len(base), max_clique))
        attach = rng.sample(sorted(base), size) if size else []
        for u in attach:
            edges.append((u, v))
        cliques.append(set(attach) | {v})
        present.append(v)
    positions = list(range(1, n + 1))
    rng.shuffle(positions)
    g = OrderedGraph(zip(names, positions), edges)
    return Instance(g, random_lists(rng, g, full_bias))


def random_two_list_instance(
    rng: random.Random, n: int, edge_prob: float, singleton_bias: float = 0.2
) -> Instance:
    g = random_ordered_graph(rng, n, edge_prob)
    lists = {}
    for v in g.vertices:
        if rng.random() < singleton_bias:
            lists[v] = frozenset((rng.randint(1, 3),))
        else:
            lists[v] = rng.choice(_PROPER_SUBSETS[3:])
    return Instance(g, ListAssignment(lists))


def random_nae(rng: random.Random, num_vars: int, num_clauses: int) -> NaeInstance:
    clauses = [
        tuple(sorted(rng.sample(range(1, num_vars + 1), 3))) for _ in range(num_clauses)
    ]
    return NaeInstance(num_vars, clauses)


def small_source_graphs(max_edges: int = 4) -> list[OrderedGraph]:
    """A deterministic corpus of small source graphs for the expanders: one
    representative per isomorphism class with 1..max_edges edges and no
    isolated vertex, plus one padded variant."""
    seen = set()
    out = []
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for m in range(1, max_edges + 1):
            for edges in itertools.combinations(pairs, m):
                used = {x for e in edges for x in e}
                if len(used) != n:
                    continue
                key = _canonical(n, edges)
                if key in seen:
                    continue
                seen.add(key)
                out.append(OrderedGraph([(i, i) for i in range(1, n + 1)], edges))
    with_isolated = OrderedGraph([(i, i) for i in range(1, 4)], [(1, 3)])
    out.append(with_isolated)
    return out


def _canonical(n: int, edges) -> tuple:
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabel = {i + 1: perm[i] for i in range(n)}
        key = tuple(sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return (n, best)


def positions_fuzzed(rng: random.Random, g: OrderedGraph) -> OrderedGraph:
    """Same order type with fresh random rational positions."""
    n = g.n
    raw = sorted(rng.sample(range(-10 * n, 10 * n), n))
    new_positions = [Fraction(x, rng.randint(1, 3)) for x in raw]
    new_positions.sort()
    if len(set(new_positions)) != n:
        return positions_fuzzed(rng, g)
    return OrderedGraph(
        [(v, new_positions[i]) for i, v in enumerate(g.vertices)],
        [tuple(e) for e in g.edges],
    )
