"""Ordered graphs with exact rational vertex positions, and the structural
primitives built on them: order-preserving induced subgraphs, interval and
neighborhood queries, maximal edges, pattern containment, padding, and
monotone subsequences.

Positions are `fractions.Fraction` values so that half-offset constructions
stay bit-exact; no floating point enters any comparison. All values are
immutable after construction and every operation is a pure function.
"""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import InputError

COLORS = (1, 2, 3)

Position = Fraction


def as_position(value) -> Fraction:
    """Coerce ints/Fractions to an exact position; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"positions must be exact rationals, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise InputError(f"positions must be exact rationals, got {value!r}")


class _Extreme:
    """A dedicated two-valued extension of Position: -inf and +inf."""

    __slots__ = ("_sign",)

    def __init__(self, sign: int):
        self._sign = sign

    def __lt__(self, other):
        if isinstance(other, _Extreme):
            return self._sign < other._sign
        return self._sign < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if isinstance(other, _Extreme):
            return self._sign > other._sign
        return self._sign > 0

    def __ge__(self, other):
        return self == other or self > other

    def __eq__(self, other):
        return isinstance(other, _Extreme) and self._sign == other._sign

    def __hash__(self):
        return hash(("extreme", self._sign))

    def __repr__(self):
        return "POS_INF" if self._sign > 0 else "NEG_INF"


NEG_INF = _Extreme(-1)
POS_INF = _Extreme(+1)


class OrderedGraph:
    """A finite simple graph together with an injective rational position map.

    Vertex identity is opaque (any hashable); only the position order matters
    for isomorphism and pattern containment.
    """

    __slots__ = ("_pos", "_order", "_rank", "_adj", "_edges", "_bits")

    def __init__(self, vertices: Iterable[tuple[object, object]], edges: Iterable[tuple] = ()):
        pos: dict = {}
        for vid, p in vertices:
            if vid in pos:
                raise InputError(f"duplicate vertex id {vid!r}")
            pos[vid] = as_position(p)
        seen_positions: dict = {}
        for vid, p in pos.items():
            if p in seen_positions:
                raise InputError(f"duplicate position {p} for {seen_positions[p]!r} and {vid!r}")
            seen_positions[p] = vid
        edge_set = set()
        adj = {vid: set() for vid in pos}
        for u, v in edges:
            if u not in pos or v not in pos:
                raise InputError(f"edge ({u!r},{v!r}) references unknown vertex")
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            e = frozenset((u, v))
            if e in edge_set:
                raise InputError(f"duplicate edge ({u!r},{v!r})")
            edge_set.add(e)
            adj[u].add(v)
            adj[v].add(u)
        self._pos = pos
        self._order = tuple(sorted(pos, key=pos.__getitem__))
        self._rank = {vid: i for i, vid in enumerate(self._order)}
        self._adj = {vid: frozenset(nbrs) for vid, nbrs in adj.items()}
        self._edges = frozenset(edge_set)
        self._bits = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._pos)

    @property
    def vertices(self) -> tuple:
        """Vertex ids in position order."""
        return self._order

    @property
    def edges(self) -> frozenset:
        return self._edges

    def position(self, v) -> Fraction:
        try:
            return self._pos[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def positions(self) -> Mapping:
        return dict(self._pos)

    def rank(self, v) -> int:
        try:
            return self._rank[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def neighbors(self, v) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def has_edge(self, u, v) -> bool:
        return v in self.neighbors(u)

    def has_vertex(self, v) -> bool:
        return v in self._pos

    def adjacency_bits(self) -> tuple:
        """Per-rank adjacency bitmasks (bit j set iff adjacent to rank j)."""
        if self._bits is None:
            bits = []
            for v in self._order:
                m = 0
                for u in self._adj[v]:
                    m |= 1 << self._rank[u]
                bits.append(m)
            self._bits = tuple(bits)
        return self._bits

    def __eq__(self, other):
        return (
            isinstance(other, OrderedGraph)
            and self._pos == other._pos
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((frozenset(self._pos.items()), self._edges))

    def __repr__(self):
        return f"OrderedGraph(n={self.n}, m={len(self._edges)})"

    # -- structural operations --------------------------------------------

    def induced(self, xs) -> "OrderedGraph":
        """The order-preserving induced subgraph on vertex set `xs`."""
        xs = set(xs)
        for v in xs:
            if v not in self._pos:
                raise InputError(f"unknown vertex {v!r}")
        verts = [(v, self._pos[v]) for v in xs]
        edges = [tuple(e) for e in self._edges if e <= xs]
        return OrderedGraph(verts, edges)

    def remove(self, xs) -> "OrderedGraph":
        xs = set(xs)
        return self.induced(set(self._pos) - xs)

    def reverse(self) -> "OrderedGraph":
        """Same vertices and edges with every position negated."""
        return OrderedGraph(
            [(v, -p) for v, p in self._pos.items()],
            [tuple(e) for e in self._edges],
        )

    def interval(self, lo, hi, include_lo: bool = False, include_hi: bool = True) -> frozenset:
        """Vertices whose position lies in the given interval; defaults to (lo:hi]."""
        out = []
        for v, p in self._pos.items():
            if not (lo <= p if include_lo else lo < p):
                continue
            if not (p <= hi if include_hi else p < hi):
                continue
            out.append(v)
        return frozenset(out)

    def pad(self, k: int, l: int) -> "OrderedGraph":
        """Add k isolated vertices before and l after, at unit gaps."""
        if k < 0 or l < 0:
            raise InputError("pad counts must be nonnegative")
        if self._pos:
            lo = min(self._pos.values())
            hi = max(self._pos.values())
        else:
            lo = hi = Fraction(0)
        verts = list(self._pos.items())
        for i in range(1, k + 1):
            verts.append((_fresh_id(self._pos, f"a{i}"), lo - (k + 1 - i)))
        for i in range(1, l + 1):
            verts.append((_fresh_id(self._pos, f"b{i}"), hi + i))
        return OrderedGraph(verts, [tuple(e) for e in self._edges])

    def maximal_edges(self) -> tuple:
        """mx(G): edges not spanned on both sides by another edge.

        Returned as (u, v) pairs with pos(u) < pos(v), sorted by left
        endpoint; left and right endpoints are each strictly increasing.
        """
        oriented = []
        for e in self._edges:
            u, v = sorted(e, key=self._pos.__getitem__)
            oriented.append((u, v))
        result = []
        for u, v in oriented:
            pu, pv = self._pos[u], self._pos[v]
            dominated = False
            for x, y in oriented:
                if (x, y) != (u, v) and self._pos[x] <= pu and pv <= self._pos[y]:
                    dominated = True
                    break
            if not dominated:
                result.append((u, v))
        result.sort(key=lambda e: self._pos[e[0]])
        # sanity required by the maximal-edge order contract
        for (u1, v1), (u2, v2) in zip(result, result[1:]):
            assert self._pos[u1] < self._pos[u2] and self._pos[v1] < self._pos[v2]
        return tuple(result)

    def under(self, e) -> frozenset:
        """und(e): vertices between the endpoints of e, inclusive."""
        u, v = e
        if frozenset((u, v)) not in self._edges:
            raise InputError(f"edge ({u!r},{v!r}) not in graph")
        lo, hi = sorted((self._pos[u], self._pos[v]))
        return self.interval(lo, hi, include_lo=True, include_hi=True)

    def left_of(self, e) -> frozenset:
        """lft(e): vertices strictly left of both endpoints of e."""
        u, v = e
        if frozenset((u, v)) not in self._edges:
            raise InputError(f"edge ({u!r},{v!r}) not in graph")
        lo = min(self._pos[u], self._pos[v])
        return self.interval(NEG_INF, lo, include_hi=False)

    def under_left(self, e) -> tuple[frozenset, frozenset]:
        return self.under(e), self.left_of(e)

    def forward_neighbors(self, v) -> frozenset:
        p = self.position(v)
        return frozenset(u for u in self._adj[v] if self._pos[u] > p)

    def backward_neighbors(self, v) -> frozenset:
        p = self.position(v)
        return frozenset(u for u in self._adj[v] if self._pos[u] < p)

    def neighborhoods(self, v, rho: int = 1):
        """Distance-rho sets by BFS: (N^rho, N^rho[.], N+, N-).

        The forward/backward split always refers to distance 1. Depths
        beyond one are provided for completeness; the solvers in this
        package only ever consult depth one.
        """
        if v not in self._pos:
            raise InputError(f"unknown vertex {v!r}")
        if rho < 1:
            raise InputError("rho must be >= 1")
        dist = {v: 0}
        frontier = [v]
        d = 0
        while frontier and d < rho:
            d += 1
            nxt = []
            for x in frontier:
                for y in self._adj[x]:
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
            frontier = nxt
        exact = frozenset(x for x, dx in dist.items() if dx == rho)
        ball = frozenset(x for x in dist if x != v)
        return exact, ball, self.forward_neighbors(v), self.backward_neighbors(v)


def _fresh_id(existing, base: str):
    name = base
    while name in existing:
        name = "_" + name
    return name


def rank_normalized(g: OrderedGraph) -> OrderedGraph:
    """Same order type with positions replaced by ranks 1..n. Only the
    order matters for freeness, so this is safe before pattern checks;
    exact fractional positions are kept everywhere else."""
    return OrderedGraph(
        [(v, i + 1) for i, v in enumerate(g.vertices)],
        [tuple(e) for e in g.edges],
    )


def is_isomorphic(g: OrderedGraph, h: OrderedGraph) -> bool:
    """Order-type isomorphism: the unique order-respecting bijection maps
    edges onto edges exactly."""
    if g.n != h.n:
        return False
    go, ho = g.vertices, h.vertices
    to_g = {ho[i]: go[i] for i in range(g.n)}
    mapped = frozenset(frozenset(to_g[x] for x in e) for e in h.edges)
    return mapped == g.edges


def contains_pattern(g: OrderedGraph, h: OrderedGraph) -> Optional[frozenset]:
    """A witness X with G[X] order-isomorphic to H, or None if G is H-free.

    Backtracking anchored on the pattern's edges: edge endpoints are matched
    by iterating host edges inside the position window allowed so far, and
    isolated pattern vertices are filled in last. Exact (induced) adjacency
    against every already-matched vertex is enforced at each step.
    """
    t = h.n
    if t == 0:
        return frozenset()
    if t > g.n:
        return None

    horder = h.vertices
    hpos = {v: i for i, v in enumerate(horder)}
    padj = [[False] * t for _ in range(t)]
    pedges = []
    for e in h.edges:
        a, b = sorted((hpos[x] for x in e))
        padj[a][b] = padj[b][a] = True
        pedges.append((a, b))
    pedges.sort()

    gbits = g.adjacency_bits()
    gorder = g.vertices
    n = g.n
    # host edges as rank pairs, sorted by left rank for windowed iteration
    hedges = sorted(
        tuple(sorted(g.rank(x) for x in e)) for e in g.edges
    )
    hlefts = [a for a, _ in hedges]

    plan = []
    placed = set()
    for a, b in pedges:
        if a not in placed and b not in placed:
            plan.append(("pair", a, b))
        elif a in placed and b not in placed:
            plan.append(("one", a, b))
        elif b in placed and a not in placed:
            plan.append(("one", b, a))
        # both placed: adjacency was enforced when the later one was placed
        placed.add(a)
        placed.add(b)
    for i in range(t):
        if i not in placed:
            plan.append(("free", i))

    assignment: dict[int, int] = {}

    def window(p: int) -> tuple[int, int]:
        lo, hi = -1, n
        for q, r in assignment.items():
            if q < p and r > lo:
                lo = r
            elif q > p and r < hi:
                hi = r
        return lo, hi

    def fits(p: int, r: int) -> bool:
        row = padj[p]
        bits = gbits[r]
        for q, s in assignment.items():
            if (q < p) != (s < r):
                return False
            if row[q] != bool(bits >> s & 1):
                return False
        return True

    def step(si: int) -> bool:
        if si == len(plan):
            return True
        kind = plan[si][0]
        if kind == "pair":
            _, a, b = plan[si]
            lo_a, hi_a = window(a)
            i0 = bisect_right(hlefts, lo_a)
            for idx in range(i0, len(hedges)):
                ra, rb = hedges[idx]
                if ra >= hi_a:
                    break
                if not fits(a, ra):
                    continue
                assignment[a] = ra
                if fits(b, rb):
                    assignment[b] = rb
                    if step(si + 1):
                        return True
                    del assignment[b]
                del assignment[a]
            return False
        if kind == "one":
            _, a, b = plan[si]
            anchor = assignment[a]
            bits = gbits[anchor]
            m = bits
            while m:
                r = (m & -m).bit_length() - 1
                m &= m - 1
                if fits(b, r):
                    assignment[b] = r
                    if step(si + 1):
                        return True
                    del assignment[b]
            return False
        _, p = plan[si]
        lo, hi = window(p)
        for r in range(lo + 1, hi):
            if fits(p, r):
                assignment[p] = r
                if step(si + 1):
                    return True
                del assignment[p]
        return False

    if step(0):
        return frozenset(gorder[r] for r in assignment.values())
    return None


def is_pattern_free(g: OrderedGraph, h: OrderedGraph) -> bool:
    return contains_pattern(g, h) is None


def monotone_subsequence(seq, n: int):
    """Indices of a strictly monotone subsequence of length n+1.

    The input must have at least n^2+1 distinct entries; by the
    Erdos-Szekeres bound a monotone subsequence of the required length
    always exists (increasing is preferred when both are available).
    """
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise InputError("entries must be distinct")
    if len(seq) < n * n + 1:
        raise InputError(f"need at least {n * n + 1} entries, got {len(seq)}")
    inc = _longest_monotone(seq, increasing=True)
    if len(inc) >= n + 1:
        return inc[: n + 1]
    dec = _longest_monotone(seq, increasing=False)
    assert len(dec) >= n + 1, "Erdos-Szekeres bound violated"
    return dec[: n + 1]


def _longest_monotone(seq, increasing: bool):
    """Patience-sorting longest strictly increasing (or decreasing)
    subsequence; returns indices."""
    keys = seq if increasing else [-x for x in seq]
    tails: list[float] = []  # last key of the best chain of each length
    tails_idx: list[int] = []
    parent = [-1] * len(keys)
    for i, k in enumerate(keys):
        j = bisect_left(tails, k)
        if j == len(tails):
            tails.append(k)
            tails_idx.append(i)
        else:
            tails[j] = k
            tails_idx[j] = i
        parent[i] = tails_idx[j - 1] if j > 0 else -1
    chain = []
    cur = tails_idx[-1]
    while cur != -1:
        chain.append(cur)
        cur = parent[cur]
    chain.reverse()
    return chain


class ListAssignment:
    """Per-vertex allowed colors, each a subset of {1,2,3}."""

    __slots__ = ("_lists",)

    def __init__(self, lists: Mapping):
        clean = {}
        for v, colors in lists.items():
            cs = frozenset(colors)
            if not cs <= {1, 2, 3}:
                raise InputError(f"list for {v!r} is not a subset of {{1,2,3}}: {sorted(cs)}")
            clean[v] = cs
        self._lists = clean

    @classmethod
    def full(cls, g: OrderedGraph) -> "ListAssignment":
        return cls({v: COLORS for v in g.vertices})

    def get(self, v) -> frozenset:
        try:
            return self._lists[v]
        except KeyError:
            raise InputError(f"no list for vertex {v!r}") from None

    __getitem__ = get

    def domain(self) -> frozenset:
        return frozenset(self._lists)

    def view(self, color: int) -> frozenset:
        """L^(i): vertices whose list contains the color."""
        return frozenset(v for v, cs in self._lists.items() if color in cs)

    def items(self):
        return self._lists.items()

    def restrict(self, xs) -> "ListAssignment":
        xs = set(xs)
        return ListAssignment({v: cs for v, cs in self._lists.items() if v in xs})

    def updated(self, changes: Mapping) -> "ListAssignment":
        merged = dict(self._lists)
        for v, cs in changes.items():
            if v not in merged:
                raise InputError(f"no list for vertex {v!r}")
            merged[v] = cs
        return ListAssignment(merged)

    def __eq__(self, other):
        return isinstance(other, ListAssignment) and self._lists == other._lists

    def __hash__(self):
        return hash(frozenset(self._lists.items()))

    def __repr__(self):
        return f"ListAssignment({{{', '.join(f'{v!r}: {sorted(cs)}' for v, cs in sorted(self._lists.items(), key=lambda kv: str(kv[0])))}}})"


class Instance:
    """An ordered graph paired with a list assignment over its vertices."""

    __slots__ = ("graph", "lists")

    def __init__(self, graph: OrderedGraph, lists: ListAssignment):
        if lists.domain() != frozenset(graph.vertices):
            raise InputError("list assignment domain must equal the vertex set")
        self.graph = graph
        self.lists = lists

    @classmethod
    def with_full_lists(cls, graph: OrderedGraph) -> "Instance":
        return cls(graph, ListAssignment.full(graph))

    def sub_instance(self, xs) -> "Instance":
        xs = set(xs)
        return Instance(self.graph.induced(xs), self.lists.restrict(xs))

    def __eq__(self, other):
        return (
            isinstance(other, Instance)
            and self.graph == other.graph
            and self.lists == other.lists
        )

    def __hash__(self):
        return hash((self.graph, self.lists))

    def __repr__(self):
        return f"Instance({self.graph!r})"


class Coloring:
    """A (possibly partial) color assignment with an explicit domain."""

    __slots__ = ("_assignment",)

    def __init__(self, assignment: Mapping):
        a = {}
        for v, c in assignment.items():
            if c not in (1, 2, 3):
                raise InputError(f"color for {v!r} must be in {{1,2,3}}, got {c!r}")
            a[v] = c
        self._assignment = a

    def get(self, v):
        return self._assignment.get(v)

    def __getitem__(self, v):
        return self._assignment[v]

    def __contains__(self, v):
        return v in self._assignment

    def domain(self) -> frozenset:
        return frozenset(self._assignment)

    def items(self):
        return self._assignment.items()

    def __len__(self):
        return len(self._assignment)

    def color_class(self, color: int) -> frozenset:
        return frozenset(v for v, c in self._assignment.items() if c == color)

    def is_proper(self, g: OrderedGraph) -> bool:
        for e in g.edges:
            u, v = tuple(e)
            cu, cv = self._assignment.get(u), self._assignment.get(v)
            if cu is not None and cu == cv:
                return False
        return True

    def respects(self, lists: ListAssignment) -> bool:
        return all(c in lists.get(v) for v, c in self._assignment.items())

    def validates(self, inst: Instance) -> bool:
        """Total, proper, and list-respecting for the given instance."""
        return (
            self.domain() == frozenset(inst.graph.vertices)
            and self.is_proper(inst.graph)
            and self.respects(inst.lists)
        )

    def merged_with(self, other: "Coloring") -> "Coloring":
        out = dict(self._assignment)
        out.update(other.items())
        return Coloring(out)

    def restrict(self, xs) -> "Coloring":
        xs = set(xs)
        return Coloring({v: c for v, c in self._assignment.items() if v in xs})

    def __eq__(self, other):
        return isinstance(other, Coloring) and self._assignment == other._assignment

    def __hash__(self):
        return hash(frozenset(self._assignment.items()))

    def __repr__(self):
        body = ", ".join(f"{v!r}:{c}" for v, c in sorted(self._assignment.items(), key=lambda kv: str(kv[0])))
        return f"Coloring({{{body}}})"


class Refinement:
    """An instance over an induced subgraph with shrunken lists.

    `forced` records colors of vertices that were removed because their
    color became determined, which lets a coloring of the sub-instance be
    extended back to the base graph.
    """

    __slots__ = ("base", "sub", "forced")

    def __init__(self, base: Instance, sub: Instance, forced: Mapping = ()):
        base_vs = set(base.graph.vertices)
        sub_vs = set(sub.graph.vertices)
        if not sub_vs <= base_vs:
            raise InputError("refinement subgraph must use base vertices")
        for v in sub_vs:
            if base.graph.position(v) != sub.graph.position(v):
                raise InputError(f"position of {v!r} changed in refinement")
            if not sub.lists.get(v) <= base.lists.get(v):
                raise InputError(f"list of {v!r} grew in refinement")
        expected_edges = frozenset(e for e in base.graph.edges if e <= sub_vs)
        if sub.graph.edges != expected_edges:
            raise InputError("refinement subgraph is not induced")
        self.base = base
        self.sub = sub
        self.forced = dict(forced)

    @property
    def spanning(self) -> bool:
        return set(self.sub.graph.vertices) == set(self.base.graph.vertices)

    def extend(self, coloring: Coloring) -> Coloring:
        """Extend a coloring of the sub-instance to the base vertex set
        using the recorded forced colors."""
        out = dict(coloring.items())
        missing = set(self.base.graph.vertices) - set(out)
        for v in missing:
            if v not in self.forced:
                raise InputError(f"no forced color recorded for removed vertex {v!r}")
            out[v] = self.forced[v]
        return Coloring(out)

    def __repr__(self):
        return f"Refinement(sub_n={self.sub.graph.n}, spanning={self.spanning})"


class Profile:
    """A set of refinements of one shared base instance."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable[Refinement]):
        members = tuple(members)
        bases = {id(m.base) for m in members}
        if len(bases) > 1 and len({m.base for m in members}) > 1:
            raise InputError("profile members must share a base instance")
        self.members = members

    @property
    def spanning(self) -> bool:
        return all(m.spanning for m in self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"Profile(size={len(self.members)})"


def all_subsets(items, max_size=None):
    items = list(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for r in range(top + 1):
        yield from itertools.combinations(items, r)
