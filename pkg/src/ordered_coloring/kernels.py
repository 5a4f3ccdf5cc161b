"""Polynomial subroutines shared by both main solvers: singleton
propagation, the no-singleton refinement, 2-SAT list coloring, bounded
wide-set and small-class solvers, clique-4 detection, chordality, and
chordal list coloring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import COLORS, Coloring, Instance, ListAssignment, OrderedGraph, Refinement
from .errors import PreconditionError

_BIT = {1: 1, 2: 2, 3: 4}
_ONLY = {1: 1, 2: 2, 4: 3}  # singleton mask -> its color


def _masks(inst: Instance) -> dict:
    return {v: sum(_BIT[c] for c in inst.lists.get(v)) for v in inst.graph.vertices}


def _lists_from_masks(masks: dict) -> ListAssignment:
    return ListAssignment(
        {v: frozenset(c for c in COLORS if m & _BIT[c]) for v, m in masks.items()}
    )


def _propagate_masks(graph: OrderedGraph, masks: dict) -> dict:
    """Fixpoint of: a vertex with a one-color list removes that color from
    every neighbor's list. Empty lists are left in place."""
    masks = dict(masks)
    queue = [v for v, m in masks.items() if m in (1, 2, 4)]
    while queue:
        v = queue.pop()
        bit = masks[v]
        if bit not in (1, 2, 4):  # may have shrunk to empty meanwhile
            continue
        for u in graph.neighbors(v):
            if masks[u] & bit:
                masks[u] &= ~bit
                if masks[u] in (1, 2, 4):
                    queue.append(u)
    return masks


def propagate_singletons(inst: Instance) -> Instance:
    """Equivalent spanning refinement in which no vertex keeps the color of
    a one-color neighbor. Preserves the exact set of colorings."""
    return Instance(inst.graph, _lists_from_masks(_propagate_masks(inst.graph, _masks(inst))))


def drop_singletons(inst: Instance) -> Refinement:
    """Propagate, then delete every vertex whose list is a single color,
    recording the forced colors. The result has lists of size 0, 2, or 3
    only and admits a coloring iff the input does."""
    graph = inst.graph
    masks = _masks(inst)
    forced: dict = {}
    while True:
        masks = _propagate_masks(graph, masks)
        singles = {v: _ONLY[m] for v, m in masks.items() if m in (1, 2, 4)}
        if not singles:
            break
        forced.update(singles)
        keep = [v for v in graph.vertices if v not in singles]
        graph = graph.induced(keep)
        masks = {v: masks[v] for v in keep}
    sub = Instance(graph, _lists_from_masks(masks))
    return Refinement(inst, sub, forced)


class _TwoSat:
    """Implication-graph 2-SAT with iterative Tarjan SCC.

    Literals: variable v has true-literal 2v and false-literal 2v+1.
    """

    def __init__(self, nvars: int):
        self.n = 2 * nvars
        self.adj: list[list[int]] = [[] for _ in range(self.n)]

    def add_clause(self, a: int, b: int):
        # (a or b): not-a implies b, not-b implies a
        self.adj[a ^ 1].append(b)
        self.adj[b ^ 1].append(a)

    def solve(self) -> Optional[list[bool]]:
        n = self.n
        comp = [-1] * n
        low = [0] * n
        num = [-1] * n
        counter = 0
        ncomp = 0
        stack: list[int] = []
        on_stack = [False] * n
        for root in range(n):
            if num[root] != -1:
                continue
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    num[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                recursed = False
                for i in range(pi, len(self.adj[v])):
                    w = self.adj[v][i]
                    if num[w] == -1:
                        work[-1] = (v, i + 1)
                        work.append((w, 0))
                        recursed = True
                        break
                    if on_stack[w] and num[w] < low[v]:
                        low[v] = num[w]
                if recursed:
                    continue
                if low[v] == num[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
        out = []
        for v in range(0, n, 2):
            if comp[v] == comp[v + 1]:
                return None
            # smaller component index = closer to a sink = safe to satisfy
            out.append(comp[v] < comp[v + 1])
        return out


def solve_two_lists(inst: Instance) -> Optional[Coloring]:
    """List coloring when every list has at most two colors, by 2-SAT.

    Boolean per vertex: False picks the smaller list entry, True the
    larger; one-color lists are forced, empty lists are unsatisfiable.
    """
    order = inst.graph.vertices
    choices = []
    for v in order:
        cs = tuple(sorted(inst.lists.get(v)))
        if len(cs) > 2:
            raise PreconditionError(f"vertex {v!r} has a 3-color list")
        if not cs:
            return None
        choices.append(cs)
    idx = {v: i for i, v in enumerate(order)}
    sat = _TwoSat(len(order))

    def lit(i: int, pick: int) -> int:
        # literal asserting vertex i picks entry `pick` of its list
        return 2 * i if pick == 1 else 2 * i + 1

    for i, cs in enumerate(choices):
        if len(cs) == 1:
            neg = lit(i, 1) ^ 1
            sat.add_clause(neg, neg)
    for e in inst.graph.edges:
        u, v = tuple(e)
        i, j = idx[u], idx[v]
        for a, ca in enumerate(choices[i]):
            for b, cb in enumerate(choices[j]):
                if ca == cb:
                    sat.add_clause(lit(i, a) ^ 1, lit(j, b) ^ 1)
    model = sat.solve()
    if model is None:
        return None
    assignment = {}
    for i, v in enumerate(order):
        cs = choices[i]
        pick = 1 if (model[i] and len(cs) == 2) else 0
        assignment[v] = cs[pick]
    coloring = Coloring(assignment)
    assert coloring.validates(inst)
    return coloring


def solve_few_wide(inst: Instance, c: int) -> Optional[Coloring]:
    """Decide colorability when at most c vertices have full lists, by
    enumerating the wide vertices' colors and finishing with 2-SAT. The
    first success in enumeration order (wide vertices by position, colors
    ascending) wins."""
    wide = [v for v in inst.graph.vertices if len(inst.lists.get(v)) == 3]
    if len(wide) > c:
        raise PreconditionError(f"{len(wide)} wide vertices exceed the bound {c}")
    if not wide:
        return solve_two_lists(inst)
    g = inst.graph
    for combo in itertools.product(COLORS, repeat=len(wide)):
        chosen = dict(zip(wide, combo))
        if any(
            g.has_edge(u, v) and chosen[u] == chosen[v]
            for u, v in itertools.combinations(wide, 2)
        ):
            continue
        new_lists = {}
        for v in g.vertices:
            if v in chosen:
                new_lists[v] = frozenset((chosen[v],))
            else:
                struck = {chosen[w] for w in g.neighbors(v) if w in chosen}
                new_lists[v] = inst.lists.get(v) - struck
        result = solve_two_lists(Instance(g, ListAssignment(new_lists)))
        if result is not None:
            return result
    return None


def solve_small_class(inst: Instance, c: int) -> Optional[Coloring]:
    """Find an L-coloring in which some color class has fewer than c
    vertices, if one exists.

    For each color i and each stable A within L^(i) with |A| < c, pin the
    class of i to exactly A and finish with 2-SAT.
    """
    g = inst.graph
    for i in COLORS:
        candidates = sorted(inst.lists.view(i), key=g.rank)
        for size in range(0, c):
            for combo in itertools.combinations(candidates, size):
                if any(g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
                    continue
                pinned = set(combo)
                new_lists = {}
                for v in g.vertices:
                    if v in pinned:
                        new_lists[v] = frozenset((i,))
                    else:
                        new_lists[v] = inst.lists.get(v) - {i}
                result = solve_two_lists(Instance(g, ListAssignment(new_lists)))
                if result is not None:
                    return result
    return None


def has_k4(g: OrderedGraph) -> bool:
    """True iff some four vertices are pairwise adjacent."""
    bits = g.adjacency_bits()
    n = g.n
    for a in range(n):
        ba = bits[a]
        for b in range(a + 1, n):
            if not ba >> b & 1:
                continue
            common = ba & bits[b]
            common >>= b + 1
            cranks = []
            shift = b + 1
            while common:
                r = (common & -common).bit_length() - 1
                cranks.append(shift + r)
                common &= common - 1
            for x, y in itertools.combinations(cranks, 2):
                if bits[x] >> y & 1:
                    return True
    return False


@dataclass(frozen=True)
class EliminationOrder:
    """A vertex order in which each vertex's later neighbors form a clique."""

    order: tuple

    def verify(self, g: OrderedGraph) -> bool:
        seen_later = {v: i for i, v in enumerate(self.order)}
        for i, v in enumerate(self.order):
            later = [u for u in g.neighbors(v) if seen_later[u] > i]
            for a, b in itertools.combinations(later, 2):
                if not g.has_edge(a, b):
                    return False
        return True


def chordal_peo(g: OrderedGraph) -> Optional[EliminationOrder]:
    """A perfect elimination ordering via maximum cardinality search, or
    None when the graph is not chordal. Ties break on position."""
    if g.n == 0:
        return EliminationOrder(())
    weight = {v: 0 for v in g.vertices}
    unnumbered = set(g.vertices)
    reverse_order = []
    while unnumbered:
        v = max(sorted(unnumbered, key=g.rank), key=lambda x: weight[x])
        reverse_order.append(v)
        unnumbered.discard(v)
        for u in g.neighbors(v):
            if u in unnumbered:
                weight[u] += 1
    peo = EliminationOrder(tuple(reversed(reverse_order)))
    return peo if peo.verify(g) else None


def is_j16_free_structurally(g: OrderedGraph) -> bool:
    """Whether the position order is itself a perfect elimination ordering:
    every vertex's forward neighbors form a clique. Equivalent to freeness
    from the three-vertex pattern with one center and two later ends."""
    for v in g.vertices:
        fwd = sorted(g.forward_neighbors(v), key=g.rank)
        for a, b in itertools.combinations(fwd, 2):
            if not g.has_edge(a, b):
                return False
    return True


def clique_number_chordal(g: OrderedGraph, peo: EliminationOrder) -> int:
    index = {v: i for i, v in enumerate(peo.order)}
    best = 1 if g.n else 0
    for i, v in enumerate(peo.order):
        later = sum(1 for u in g.neighbors(v) if index[u] > i)
        best = max(best, later + 1)
    return best


def solve_chordal(inst: Instance) -> Optional[Coloring]:
    """List coloring of a chordal graph by bucket elimination along a
    perfect elimination ordering. Separators have at most two vertices
    once cliques of size four are ruled out."""
    g = inst.graph
    peo = chordal_peo(g)
    if peo is None:
        raise PreconditionError("graph is not chordal")
    if any(not inst.lists.get(v) for v in g.vertices):
        return None
    if g.n == 0:
        return Coloring({})
    if clique_number_chordal(g, peo) > 3:
        return None

    index = {v: i for i, v in enumerate(peo.order)}
    lists = {v: tuple(sorted(inst.lists.get(v))) for v in g.vertices}
    # bucket[v]: constraints (scope_tuple, allowed_set) whose earliest
    # unprocessed variable is v; scopes are cliques of later neighbors
    buckets: dict = {v: [] for v in g.vertices}
    # per-vertex join table for witness reconstruction
    choice_table: dict = {}

    for v in peo.order:
        later = sorted(
            (u for u in g.neighbors(v) if index[u] > index[v]), key=index.__getitem__
        )
        assert len(later) <= 2
        rows = {}
        total = 1
        for u in later:
            total *= len(lists[u])
        for combo in itertools.product(*(lists[u] for u in later)):
            env = dict(zip(later, combo))
            picks = []
            for c in lists[v]:
                if any(env[u] == c for u in later):
                    continue
                env[v] = c
                # every bucket scope contains v (it is the scope's earliest)
                if all(
                    tuple(env[u] for u in scope) in allowed
                    for scope, allowed in buckets[v]
                ):
                    picks.append(c)
            env.pop(v, None)
            if picks:
                rows[combo] = picks[0]
        choice_table[v] = (later, rows)
        if not rows:
            return None
        if later and len(rows) < total:
            buckets[later[0]].append((tuple(later), frozenset(rows.keys())))

    assignment: dict = {}
    for v in reversed(peo.order):
        later, rows = choice_table[v]
        key = tuple(assignment[u] for u in later)
        assignment[v] = rows[key]
    coloring = Coloring(assignment)
    assert coloring.validates(inst)
    return coloring
