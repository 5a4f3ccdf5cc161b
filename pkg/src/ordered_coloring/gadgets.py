"""Constructive hardness reductions: a bipartite embedding, two NAE3SAT
gadgets, the list-realization builder, and three edge-to-path expanders.
Every generator emits its instance together with per-vertex provenance,
the advertised absent patterns, and (for realizations) the path registry,
so the whole output can be machine-checked at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    Instance,
    ListAssignment,
    OrderedGraph,
    contains_pattern,
)
from .errors import InputError
from .oracle import NaeInstance, nae_bruteforce, solve_bruteforce
from .patterns import build_pattern

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GadgetOutput:
    instance: Instance
    provenance: dict
    advertised_free: tuple
    path_registry: dict = field(default_factory=dict)
    source_kind: str = ""
    source: object = None


# ---------------------------------------------------------------------------
# bipartite embedding


def gen_bipartite(inst: Instance, sides: Optional[tuple] = None) -> GadgetOutput:
    """Reposition a bipartite instance so one side entirely precedes the
    other. Colorability is untouched; a long list of four-vertex patterns
    cannot embed because every edge crosses the boundary."""
    g = inst.graph
    if sides is None:
        sides = _bipartition(g)
    x_side, y_side = (set(sides[0]), set(sides[1]))
    if x_side & y_side or x_side | y_side != set(g.vertices):
        raise InputError("sides must partition the vertex set")
    for e in g.edges:
        u, v = tuple(e)
        if (u in x_side) == (v in x_side):
            raise InputError(f"edge ({u!r},{v!r}) does not cross the bipartition")
    xs = [v for v in g.vertices if v in x_side]
    ys = [v for v in g.vertices if v in y_side]
    verts = [(v, i + 1) for i, v in enumerate(xs + ys)]
    new_graph = OrderedGraph(verts, [tuple(e) for e in g.edges])
    provenance = {v: f"x_{i+1}" for i, v in enumerate(xs)}
    provenance.update({v: f"y_{j+1}" for j, v in enumerate(ys)})
    return GadgetOutput(
        instance=Instance(new_graph, inst.lists),
        provenance=provenance,
        advertised_free=("J1", "J2", "J4", "J6", "J7", "J9", "J12", "J13", "J15"),
        source_kind="instance",
        source=inst,
    )


def _bipartition(g: OrderedGraph) -> tuple[list, list]:
    side = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in g.neighbors(v):
                if u not in side:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    raise InputError("graph is not bipartite (odd cycle found)")
    zeros = [v for v in g.vertices if side[v] == 0]
    ones = [v for v in g.vertices if side[v] == 1]
    return zeros, ones


# ---------------------------------------------------------------------------
# NAE3SAT gadgets


def gen_h1(nae: NaeInstance, ordering: str) -> GadgetOutput:
    """Hub-plus-variable-row-plus-clause-triangles gadget: 3-colorable iff
    the monotone NAE instance is satisfiable. Three orderings of the same
    graph avoid three different pattern sets."""
    if ordering not in ("t1", "t2", "t3"):
        raise InputError(f"gen_h1 ordering must be t1, t2 or t3, got {ordering!r}")
    n, m = nae.num_vars, len(nae.clauses)
    edges = []
    roles = {"x": "x"}
    for i in range(1, n + 1):
        roles[f"m{i}"] = f"m_{i}"
        edges.append(("x", f"m{i}"))
    occ: dict[int, list] = {i: [] for i in range(1, n + 1)}
    for j, clause in enumerate(nae.clauses, start=1):
        tnames = [f"t{j}_{k}" for k in (1, 2, 3)]
        for k, var in enumerate(clause):
            roles[tnames[k]] = f"t_{{{j},{k+1}}}"
            edges.append((f"m{var}", tnames[k]))
            occ[var].append(j)
        edges.extend(itertools.combinations(tnames, 2))

    pos: dict = {}
    if ordering == "t1":
        pos["x"] = 1
        for i in range(1, n + 1):
            pos[f"m{i}"] = i + 1
        for j in range(1, m + 1):
            for k in (1, 2, 3):
                pos[f"t{j}_{k}"] = n + 3 * j + k - 2
    elif ordering == "t2":
        for i in range(1, n + 1):
            pos[f"m{i}"] = i
        pos["x"] = n + 1
        for j in range(1, m + 1):
            for k in (1, 2, 3):
                pos[f"t{j}_{k}"] = n + 3 * j + k - 2
    else:
        pos["x"] = 1
        for i in range(1, n + 1):
            pos[f"m{i}"] = i + 1
        offset = n + 2
        for i in range(1, n + 1):
            for slot, j in enumerate(occ[i]):
                k = list(nae.clauses[j - 1]).index(i) + 1
                pos[f"t{j}_{k}"] = offset + slot
            offset += len(occ[i])

    graph = OrderedGraph([(v, p) for v, p in pos.items()], edges)
    advertised = {
        "t1": ("J3", "neg:J11"),
        "t2": ("J5", "J8"),
        "t3": ("J10", "J14"),
    }[ordering]
    return GadgetOutput(
        instance=Instance.with_full_lists(graph),
        provenance=roles,
        advertised_free=advertised,
        source_kind="nae",
        source=nae,
    )


def gen_h2(nae: NaeInstance) -> GadgetOutput:
    """Variant with a separator row: each clause occurrence gets a private
    neighbor of the hub between its variable and its triangle corner."""
    n, m = nae.num_vars, len(nae.clauses)
    edges = []
    roles = {"x": "x"}
    for i in range(1, n + 1):
        roles[f"m{i}"] = f"m_{i}"
        edges.append(("x", f"m{i}"))
    occ: dict[int, list] = {i: [] for i in range(1, n + 1)}
    for j, clause in enumerate(nae.clauses, start=1):
        tnames = [f"t{j}_{var}" for var in clause]
        for var in clause:
            s = f"s{var}_{j}"
            t = f"t{j}_{var}"
            roles[s] = f"s_{{{var},{j}}}"
            roles[t] = f"t_{{{j},{var}}}"
            edges.append(("x", s))
            edges.append((f"m{var}", s))
            edges.append((s, t))
            occ[var].append(j)
        edges.extend(itertools.combinations(tnames, 2))

    pos: dict = {"x": 1}
    for i in range(1, n + 1):
        pos[f"m{i}"] = i + 1
    offset = n + 2
    for i in range(1, n + 1):
        for slot, j in enumerate(occ[i]):
            s_pos = offset + slot
            pos[f"s{i}_{j}"] = s_pos
            pos[f"t{j}_{i}"] = s_pos + 3 * m
        offset += len(occ[i])

    graph = OrderedGraph([(v, p) for v, p in pos.items()], edges)
    return GadgetOutput(
        instance=Instance.with_full_lists(graph),
        provenance=roles,
        advertised_free=("J7", "J13", "J14"),
        source_kind="nae",
        source=nae,
    )


# ---------------------------------------------------------------------------
# realization lists


def _mod3(c: int) -> int:
    return (c - 1) % 3 + 1


def validate_registry(g: OrderedGraph, registry: dict) -> None:
    """Check the path-registry conditions: per source edge three paths
    with shared endpoints only, interiors pairwise disjoint and free of
    endpoint vertices, interiors of workable length, consecutive pairs
    being edges, no direct endpoint edge, and every graph edge covered."""
    by_edge: dict = {}
    for (edge, branch), path in registry.items():
        by_edge.setdefault(edge, {})[branch] = tuple(path)
    endpoint_vertices = set()
    for edge in by_edge:
        endpoint_vertices.update(edge)
    covered = set()
    interiors_seen: set = set()
    for edge, branches in by_edge.items():
        u, v = edge
        if set(branches) != {1, 2, 3}:
            raise InputError(f"source edge {edge!r} must have branches 1..3")
        if g.has_edge(u, v):
            raise InputError(f"source edge {edge!r} must not be a direct edge")
        for branch in (1, 2, 3):
            path = branches[branch]
            if path[0] != u or path[-1] != v:
                raise InputError(f"path for {edge!r} branch {branch} must run from {u!r} to {v!r}")
            interior = path[1:-1]
            t = len(interior)
            if t < 2 or (t % 2 == 1 and t < 3):
                raise InputError(f"path for {edge!r} branch {branch} is too short")
            for w in interior:
                if w in endpoint_vertices:
                    raise InputError(f"interior vertex {w!r} is a path endpoint")
                if w in interiors_seen:
                    raise InputError(f"interior vertex {w!r} appears in two paths")
                interiors_seen.add(w)
            for a, b in zip(path, path[1:]):
                if not g.has_edge(a, b):
                    raise InputError(f"consecutive path pair ({a!r},{b!r}) is not an edge")
                covered.add(frozenset((a, b)))
    if covered != g.edges:
        missing = sorted(map(sorted, g.edges - covered))
        raise InputError(f"edges not covered by any path: {missing}")


def realize_lists(g: OrderedGraph, registry: dict) -> ListAssignment:
    """Lists that make the path-expanded graph colorable exactly when the
    contracted source graph is 3-colorable: full lists on source vertices,
    two-color lists along each branch with a one-step color shift at the
    head of odd-interior paths."""
    validate_registry(g, registry)
    lists: dict = {}
    interiors = set()
    for (edge, branch), path in registry.items():
        interior = path[1:-1]
        interiors.update(interior)
        t = len(interior)
        b = branch
        for idx, w in enumerate(interior, start=1):
            if t % 2 == 0:
                lists[w] = frozenset((_mod3(b), _mod3(b + 1)))
            elif idx <= 3:
                lists[w] = frozenset((_mod3(b + idx - 1), _mod3(b + idx)))
            else:
                lists[w] = frozenset((_mod3(b), _mod3(b + 1)))
    for v in g.vertices:
        if v not in interiors:
            lists[v] = frozenset((1, 2, 3))
    return ListAssignment(lists)


# ---------------------------------------------------------------------------
# edge-to-path expanders


class _Threads:
    """Level structure shared by the three expanders: per source edge and
    direction, three branch threads that persist through as many levels as
    their branch index."""

    def __init__(self, g: OrderedGraph):
        self.source = g
        self.n = g.n
        self.gidx = {v: i + 1 for i, v in enumerate(g.vertices)}
        self.edges = sorted(
            (tuple(sorted(e, key=self.gidx.__getitem__)) for e in g.edges),
            key=lambda e: (self.gidx[e[0]], self.gidx[e[1]]),
        )
        self.m = len(self.edges)
        self.f = {e: i + 1 for i, e in enumerate(self.edges)}
        threads = []
        for u, v in self.edges:
            fe = self.f[(u, v)]
            for j in (3 * fe - 2, 3 * fe - 1, 3 * fe):
                threads.append((u, v, j))
                threads.append((v, u, j))
        self.threads = threads
        # levels[i] lists the alive threads at level i+1 in layout order
        self.levels = []
        for i in range(1, 3 * self.m + 1):
            alive = [th for th in threads if th[2] >= i]
            alive.sort(key=lambda th: (self.gidx[th[0]], self.gidx[th[1]], th[2]))
            self.levels.append(alive)

    def closers(self, i: int) -> tuple:
        """The two directed threads whose branch index equals the level,
        ordered by layout rank."""
        level = self.levels[i - 1]
        pair = [th for th in level if th[2] == i]
        assert len(pair) == 2
        pair.sort(key=level.index)
        return pair[0], pair[1]

    def rank(self, i: int, th) -> int:
        return self.levels[i - 1].index(th) + 1

    def branch_of(self, th) -> tuple:
        u, v, j = th
        e = (u, v) if (u, v) in self.f else (v, u)
        return e, j - 3 * self.f[e] + 3


def _w_name(i: int, th) -> str:
    u, v, j = th
    return f"w{i}({u},{v},{j})"


def gen_h3(g: OrderedGraph, variant: str) -> GadgetOutput:
    """Expander whose paths close through a row of half-offset copies
    strictly between the two closing columns of each level. One layout
    keeps every level in thread order; the other reverses odd levels."""
    if variant not in ("t5", "t6"):
        raise InputError(f"gen_h3 variant must be t5 or t6, got {variant!r}")
    st = _Threads(g)
    pos5: dict = {}
    roles: dict = {}
    edges: list = []
    for v in g.vertices:
        pos5[v] = Fraction(st.gidx[v])
        roles[v] = f"orig_{v}"

    level_base = st.n
    bases = []
    for i in range(1, 3 * st.m + 1):
        bases.append(level_base)
        level = st.levels[i - 1]
        for r, th in enumerate(level, start=1):
            name = _w_name(i, th)
            pos5[name] = Fraction(level_base + r)
            roles[name] = f"w_{i}({th[0]},{th[1]},{th[2]})"
            if i == 1:
                edges.append((th[0], name))
            else:
                edges.append((_w_name(i - 1, th), name))
        level_base += len(level)

    z_by_level: dict = {}
    for i in range(1, 3 * st.m + 1):
        level = st.levels[i - 1]
        left, right = st.closers(i)
        r1, r2 = st.rank(i, left), st.rank(i, right)
        between = level[r1 : r2 - 1]
        lname, rname = _w_name(i, left), _w_name(i, right)
        if not between:
            edges.append((lname, rname))
            z_by_level[i] = []
            continue
        znames = []
        for th in between:
            zname = f"z{i}({th[0]},{th[1]},{th[2]})"
            pos5[zname] = pos5[_w_name(i, th)] + HALF
            roles[zname] = f"z_{i}({th[0]},{th[1]},{th[2]})"
            znames.append(zname)
        for a, b in zip(znames, znames[1:]):
            edges.append((a, b))
        edges.append((lname, znames[0]))
        edges.append((rname, znames[-1]))
        z_by_level[i] = znames

    if variant == "t5":
        pos = pos5
    else:
        pos = {v: pos5[v] for v in g.vertices}
        for i in range(1, 3 * st.m + 1):
            level = st.levels[i - 1]
            size = len(level)
            for r, th in enumerate(level, start=1):
                name = _w_name(i, th)
                if i % 2 == 0:
                    pos[name] = pos5[name]
                else:
                    pos[name] = Fraction(bases[i - 1] + size + 1 - r)
            for zname in z_by_level[i]:
                wname = "w" + zname[1:]
                pos[zname] = pos[wname] + (HALF if i % 2 == 1 else -HALF)

    graph = OrderedGraph([(v, p) for v, p in pos.items()], edges)
    registry = {}
    for edge in st.edges:
        u, v = edge
        fe = st.f[edge]
        for branch in (1, 2, 3):
            jj = 3 * fe + branch - 3
            u_side = [_w_name(i, (u, v, jj)) for i in range(1, jj + 1)]
            v_side = [_w_name(i, (v, u, jj)) for i in range(1, jj + 1)]
            left, _ = st.closers(jj)
            mid = list(z_by_level[jj])
            if left != (u, v, jj):
                mid.reverse()
            registry[(edge, branch)] = tuple(
                [u] + u_side + mid + list(reversed(v_side)) + [v]
            )
    lists = realize_lists(graph, registry)
    return GadgetOutput(
        instance=Instance(graph, lists),
        provenance=roles,
        advertised_free=("M1", "M2") if variant == "t5" else ("M3",),
        path_registry=registry,
        source_kind="graph",
        source=g,
    )


def gen_h4(g: OrderedGraph) -> GadgetOutput:
    """Expander that closes each level through a single extra vertex; all
    closing vertices live in one trailing block, in reverse level order."""
    st = _Threads(g)
    pos: dict = {}
    roles: dict = {}
    edges: list = []
    for v in g.vertices:
        pos[v] = Fraction(st.gidx[v])
        roles[v] = f"orig_{v}"

    level_base = st.n
    for i in range(1, 3 * st.m + 1):
        level = st.levels[i - 1]
        for r, th in enumerate(level, start=1):
            name = _w_name(i, th)
            pos[name] = Fraction(level_base + r)
            roles[name] = f"w_{i}({th[0]},{th[1]},{th[2]})"
            if i == 1:
                edges.append((th[0], name))
            else:
                edges.append((_w_name(i - 1, th), name))
        level_base += len(level)

    tail = st.n + 3 * st.m * (3 * st.m + 1)
    for i in range(1, 3 * st.m + 1):
        left, right = st.closers(i)
        zname = f"z{i}"
        pos[zname] = Fraction(tail + (3 * st.m - i + 1))
        roles[zname] = f"z_{i}"
        edges.append((_w_name(i, left), zname))
        edges.append((_w_name(i, right), zname))

    graph = OrderedGraph([(v, p) for v, p in pos.items()], edges)
    registry = {}
    for edge in st.edges:
        u, v = edge
        fe = st.f[edge]
        for branch in (1, 2, 3):
            jj = 3 * fe + branch - 3
            u_side = [_w_name(i, (u, v, jj)) for i in range(1, jj + 1)]
            v_side = [_w_name(i, (v, u, jj)) for i in range(1, jj + 1)]
            registry[(edge, branch)] = tuple(
                [u] + u_side + [f"z{jj}"] + list(reversed(v_side)) + [v]
            )
    lists = realize_lists(graph, registry)
    return GadgetOutput(
        instance=Instance(graph, lists),
        provenance=roles,
        advertised_free=("M4",),
        path_registry=registry,
        source_kind="graph",
        source=g,
    )


def gen_h5(g: OrderedGraph) -> GadgetOutput:
    """Expander without closing vertices: between consecutive levels the
    one closing thread drifts back through interpolated rows, half a step
    off the grid, until its chain ends one diagonal step away from its
    partner's chain end, and that diagonal step is the closing edge.

    The closing edge is itself drift-shaped, so every nested edge pair in
    the layout leaves no room for a fifth, nonadjacent vertex between the
    inner and outer right endpoints.
    """
    st = _Threads(g)
    m = st.m
    pos: dict = {}
    roles: dict = {}
    edges: list = []
    for v in g.vertices:
        pos[v] = Fraction(st.gidx[v])
        roles[v] = f"orig_{v}"

    level_base = st.n
    wpos: dict = {}
    for i in range(1, 3 * m + 1):
        level = st.levels[i - 1]
        for r, th in enumerate(level, start=1):
            name = _w_name(i, th)
            p = Fraction(36 * m * m * (i - 1) + level_base + r)
            pos[name] = p
            wpos[(i, th)] = p
            roles[name] = f"w_{i}({th[0]},{th[1]},{th[2]})"
            if i == 1:
                edges.append((th[0], name))
        level_base += len(level)

    def x_name(k: int, i: int, th) -> str:
        return f"x{k}^{i}({th[0]},{th[1]},{th[2]})"

    rows = {}
    for i in range(1, 3 * m + 1):
        level = st.levels[i - 1]
        left, right = st.closers(i)
        a_i = st.rank(i, right) - st.rank(i, left)
        assert a_i >= 1, "closing gap must be a positive integer"
        # the drifting thread stops one row short; the final drift step is
        # the closing edge itself
        rows[i] = max(a_i - 1, 1)
        prev_name = {th: _w_name(i, th) for th in level}
        for k in range(1, rows[i] + 1):
            for th in level:
                if th == right and k > rows[i] - 1:
                    continue
                name = x_name(k, i, th)
                drift = -k - HALF if th == right else 0
                pos[name] = wpos[(i, th)] + 6 * m * k + drift
                roles[name] = f"x_{k}^{i}({th[0]},{th[1]},{th[2]})"
                edges.append((prev_name[th], name))
                prev_name[th] = name
        for th in level:
            if th[2] >= i + 1:
                edges.append((prev_name[th], _w_name(i + 1, th)))
        edges.append((prev_name[right], prev_name[left]))

    graph = OrderedGraph([(v, p) for v, p in pos.items()], edges)
    registry = {}
    for edge in st.edges:
        u, v = edge
        fe = st.f[edge]
        for branch in (1, 2, 3):
            jj = 3 * fe + branch - 3
            _, drifting = st.closers(jj)

            def side_seq(th_dir):
                th = (*th_dir, jj)
                seq = []
                for i in range(1, jj + 1):
                    seq.append(_w_name(i, th))
                    top = rows[i] if i < jj or th != drifting else rows[i] - 1
                    for k in range(1, top + 1):
                        seq.append(x_name(k, i, th))
                return seq

            u_seq = side_seq((u, v))
            v_seq = side_seq((v, u))
            registry[(edge, branch)] = tuple([u] + u_seq + list(reversed(v_seq)) + [v])
    lists = realize_lists(graph, registry)
    return GadgetOutput(
        instance=Instance(graph, lists),
        provenance=roles,
        advertised_free=("M5",),
        path_registry=registry,
        source_kind="graph",
        source=g,
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class GadgetReport:
    entries: tuple  # (check name, passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)


def verify_gadget(out: GadgetOutput, oracle_cap: int = 4000) -> GadgetReport:
    """Machine checks on a generated gadget: advertised patterns really
    absent, path registry consistent, and satisfiability equal to the
    attached source's. Failures become report entries, not exceptions."""
    entries = []
    for pid in out.advertised_free:
        witness = contains_pattern(out.instance.graph, build_pattern(pid))
        entries.append(
            (
                f"advertised-free:{pid}",
                witness is None,
                "" if witness is None else f"witness={sorted(map(str, witness))}",
            )
        )
    if out.path_registry:
        try:
            validate_registry(out.instance.graph, out.path_registry)
            entries.append(("path-registry", True, ""))
        except InputError as exc:
            entries.append(("path-registry", False, str(exc)))
    if out.source_kind:
        try:
            gadget_colorable = solve_bruteforce(out.instance, cap=oracle_cap) is not None
            if out.source_kind == "nae":
                source_ok = nae_bruteforce(out.source) is not None
            elif out.source_kind == "graph":
                source_ok = (
                    solve_bruteforce(Instance.with_full_lists(out.source), cap=oracle_cap)
                    is not None
                )
            else:
                source_ok = solve_bruteforce(out.source, cap=oracle_cap) is not None
            entries.append(
                (
                    "equi-satisfiability",
                    gadget_colorable == source_ok,
                    f"gadget={gadget_colorable} source={source_ok}",
                )
            )
        except Exception as exc:  # cap overruns reported, never raised
            entries.append(("equi-satisfiability", False, f"error: {exc}"))
    return GadgetReport(tuple(entries))
