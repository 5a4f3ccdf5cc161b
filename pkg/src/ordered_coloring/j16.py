"""Polynomial solver for instances excluding the padded two-forward-edge
pattern (a center with two later, nonadjacent neighbors, plus k leading
and l trailing isolated vertices).

The pipeline guesses boundary color classes, narrows the wide set until
every vertex has at most two forward neighbors there, pads both ends by
forcing a constant-size boundary, and finishes with chordal list coloring
on the remaining wide set. The mirrored pattern is handled by reversal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    COLORS,
    Coloring,
    Instance,
    ListAssignment,
    OrderedGraph,
    Profile,
    Refinement,
    contains_pattern,
)
from .errors import PreconditionError, RefusalError
from .kernels import (
    chordal_peo,
    has_k4,
    propagate_singletons,
    solve_chordal,
    solve_two_lists,
)
from .oracle import enumerate_colorings
from .patterns import build_pattern


@dataclass(frozen=True)
class QTuple:
    """Guessed first-k and last-l vertices of each color class."""

    a_sets: tuple  # (A1, A2, A3), position-sorted tuples of size k
    b_sets: tuple  # (B1, B2, B3), size l


@dataclass(frozen=True)
class PadSets:
    """Left cover (k rounds of leftmost wide vertex plus its forward
    neighbors), its chosen stable core, and the trailing block."""

    c: frozenset
    c_prime: frozenset
    d: frozenset


def wide_set(inst: Instance) -> list:
    """Vertices whose list still has at least two colors, by position."""
    return [v for v in inst.graph.vertices if len(inst.lists.get(v)) >= 2]


def q_tuples(inst: Instance, k: int, l: int) -> Iterator[QTuple]:
    g = inst.graph
    per_color_a = {i: _stable_subsets(inst, i, k) for i in COLORS}
    per_color_b = {i: _stable_subsets(inst, i, l) for i in COLORS}

    def rec(i: int, used: set, acc_a: list, acc_b: list):
        if i > 3:
            yield QTuple(tuple(acc_a), tuple(acc_b))
            return
        for a in per_color_a[i]:
            sa = set(a)
            if used & sa:
                continue
            for b in per_color_b[i]:
                sb = set(b)
                if (used | sa) & sb:
                    continue
                # the union of the two guessed sets for one color is stable
                if any(g.has_edge(x, y) for x in a for y in b):
                    continue
                acc_a.append(a)
                acc_b.append(b)
                yield from rec(i + 1, used | sa | sb, acc_a, acc_b)
                acc_a.pop()
                acc_b.pop()

    yield from rec(1, set(), [], [])


def _stable_subsets(inst: Instance, color: int, size: int) -> list:
    g = inst.graph
    members = sorted(inst.lists.view(color), key=g.rank)
    return [
        combo
        for combo in itertools.combinations(members, size)
        if not any(g.has_edge(x, y) for x, y in itertools.combinations(combo, 2))
    ]


def _initial_lists(inst: Instance, q: QTuple) -> ListAssignment:
    """Force the guessed sets to their colors, then strike color i from
    everything up to the last guessed first-i vertex (except that set) and
    from everything past the first guessed last-i vertex (except that set).
    A guess whose sets are misordered empties itself here and is dropped by
    the caller."""
    g = inst.graph
    forced = {}
    for i, combo in zip(COLORS, q.a_sets):
        for v in combo:
            forced[v] = i
    for i, combo in zip(COLORS, q.b_sets):
        for v in combo:
            forced[v] = i
    zones = {}
    for i in COLORS:
        a = q.a_sets[i - 1]
        b = q.b_sets[i - 1]
        zones[i] = (
            max(g.position(x) for x in a) if a else None,
            min(g.position(x) for x in b) if b else None,
            set(a),
            set(b),
        )
    new_lists = {}
    for v in g.vertices:
        keep = {forced[v]} if v in forced else set(inst.lists.get(v))
        p = g.position(v)
        for i in COLORS:
            lo, hi, a_set, b_set = zones[i]
            if lo is not None and p <= lo and v not in a_set:
                keep.discard(i)
            if hi is not None and p >= hi and v not in b_set:
                keep.discard(i)
        new_lists[v] = frozenset(keep)
    return ListAssignment(new_lists)


def _fwdnbr_members(inst: Instance, k: int, l: int) -> Iterator[Instance]:
    if has_k4(inst.graph):
        return
    seen = set()
    for q in q_tuples(inst, k, l):
        lists0 = _initial_lists(inst, q)
        if any(not cs for _, cs in lists0.items()):
            continue
        refined = propagate_singletons(Instance(inst.graph, lists0))
        narrowed = _narrow(refined, q)
        if narrowed is None:
            continue
        key = frozenset(narrowed.lists.items())
        if key in seen:
            continue
        seen.add(key)
        wide = wide_set(narrowed)
        wide_pos = set(wide)
        assert all(
            len([u for u in inst.graph.forward_neighbors(v) if u in wide_pos]) <= 2
            for v in wide
        ), "narrowed member must have forward degree at most two on its wide set"
        yield narrowed


def profile_fwdnbr(inst: Instance, k: int, l: int) -> Profile:
    """Guess first-k/last-l color class vertices, then narrow until every
    vertex of the wide set has at most two forward neighbors there.

    Returns the empty profile when a 4-clique makes everything moot.
    Members whose lists empty out hold no coloring and are omitted. A
    narrowing step that runs into the forbidden pattern raises a refusal.
    """
    return Profile(Refinement(inst, member) for member in _fwdnbr_members(inst, k, l))


def _narrow(inst: Instance, q: QTuple) -> Optional[Instance]:
    """Shrink lists until the wide set has max forward degree two; returns
    None when some list empties (no coloring survives in this member)."""
    g = inst.graph
    current = inst
    while True:
        if any(not cs for _, cs in current.lists.items()):
            return None
        wide = wide_set(current)
        wide_pos = set(wide)
        v = None
        fwd_nbrs: list = []
        for cand in wide:
            fwd = [u for u in g.forward_neighbors(cand) if u in wide_pos]
            if len(fwd) >= 3:
                v = cand
                fwd_nbrs = sorted(fwd, key=g.rank)
                break
        if v is None:
            return current
        lv = current.lists.get(v)
        pair = _first_nonadjacent_pair(g, fwd_nbrs)
        if pair is None:
            raise AssertionError("three pairwise-adjacent forward neighbors imply a 4-clique")
        u, w = pair
        common = lv & current.lists.get(u) & current.lists.get(w)
        if common:
            _refuse(q, v, u, w, min(common))
        if len(lv) != 2:
            # a full list would share a color with any two wide neighbors,
            # and the nonadjacent pair above would have caught that
            raise AssertionError("wide vertex with a full list cannot reach this point")
        lu, lw = current.lists.get(u), current.lists.get(w)
        i, j = sorted(lv)
        m = (set(COLORS) - {i, j}).pop()
        if lu == frozenset((j, m)) and lw == frozenset((i, m)):
            u, w = w, u
            lu, lw = lw, lu
        if not (lu == frozenset((i, m)) and lw == frozenset((j, m))):
            raise AssertionError("narrowing reached an impossible list shape")
        x = next(y for y in fwd_nbrs if y not in (u, w))
        lx = current.lists.get(x)
        changes: dict = {}
        if {i, j} <= lx:
            for other, shared in ((u, i), (w, j)):
                if not g.has_edge(other, x):
                    _refuse(q, v, other, x, shared)
            changes[u] = frozenset((m,))
            changes[w] = frozenset((m,))
            for y in (g.neighbors(u) | g.neighbors(w)) - {u, w}:
                changes[y] = current.lists.get(y) - {m}
        elif lx == frozenset((i, m)):
            if not g.has_edge(u, x):
                _refuse(q, v, u, x, i)
            changes[v] = frozenset((j,))
            for y in g.neighbors(v):
                changes[y] = current.lists.get(y) - {j}
        elif lx == frozenset((j, m)):
            if not g.has_edge(w, x):
                _refuse(q, v, w, x, j)
            changes[v] = frozenset((i,))
            for y in g.neighbors(v):
                changes[y] = current.lists.get(y) - {i}
        else:
            raise AssertionError(f"unexpected third-neighbor list {sorted(lx)}")
        current = propagate_singletons(Instance(g, current.lists.updated(changes)))


def _first_nonadjacent_pair(g: OrderedGraph, vertices):
    for a, b in itertools.combinations(vertices, 2):
        if not g.has_edge(a, b):
            return a, b
    return None


def _refuse(q: QTuple, v, u, w, color: int):
    witness = set(q.a_sets[color - 1]) | set(q.b_sets[color - 1]) | {v, u, w}
    k = len(q.a_sets[color - 1])
    l = len(q.b_sets[color - 1])
    raise RefusalError(f"J16:{k},{l}", witness)


def _fwdnbr_special_members(inst: Instance, k: int, l: int) -> Iterator[Instance]:
    g = inst.graph
    seen = set()
    for i in COLORS:
        candidates = sorted(inst.lists.view(i), key=g.rank)
        for size in range(0, k + l):
            for combo in itertools.combinations(candidates, size):
                if any(g.has_edge(x, y) for x, y in itertools.combinations(combo, 2)):
                    continue
                pinned = set(combo)
                new_lists = {}
                for v in g.vertices:
                    if v in pinned:
                        new_lists[v] = frozenset((i,))
                    else:
                        new_lists[v] = inst.lists.get(v) - {i}
                assignment = ListAssignment(new_lists)
                key = frozenset(assignment.items())
                if key in seen:
                    continue
                seen.add(key)
                yield Instance(g, assignment)


def profile_fwdnbr_special(inst: Instance, k: int, l: int) -> Profile:
    """One member per guess of an entire small color class: pin color i to
    a stable set of size below k+l and strike i everywhere else. Every
    wide vertex of a member shares the same two-color list."""
    return Profile(
        Refinement(inst, member) for member in _fwdnbr_special_members(inst, k, l)
    )


def pad_sets(inst: Instance, k: int, l: int) -> PadSets:
    """k rounds of taking the leftmost uncovered wide vertex with its
    forward wide neighbors, then the trailing block of the remainder."""
    g = inst.graph
    wide = wide_set(inst)
    wide_pos = set(wide)
    c: set = set()
    c_prime: set = set()
    for _ in range(k):
        v = next(x for x in wide if x not in c)
        c_prime.add(v)
        c.add(v)
        c |= {u for u in g.forward_neighbors(v) if u in wide_pos}
    rest = [v for v in wide if v not in c]
    d = set(rest[-(3 * l + 6):])
    return PadSets(frozenset(c), frozenset(c_prime), frozenset(d))


def _chordalize_members(inst: Instance, k: int, l: int) -> Iterator[Instance]:
    g = inst.graph
    wide = wide_set(inst)
    wide_pos = set(wide)
    for v in wide:
        fwd = [u for u in g.forward_neighbors(v) if u in wide_pos]
        if len(fwd) > 2:
            raise PreconditionError("wide set has a vertex with three forward neighbors")
    if len(wide) < 3 * k + 3 * l + 6:
        raise PreconditionError("wide set is too small for boundary padding")
    pads = pad_sets(inst, k, l)
    block = sorted(pads.c | pads.d, key=g.rank)
    for f in enumerate_colorings(inst.sub_instance(block), cap=len(block)):
        new_lists = dict(inst.lists.items())
        for v in block:
            new_lists[v] = frozenset((f[v],))
        member = propagate_singletons(Instance(g, ListAssignment(new_lists)))
        rest_wide = wide_set(member)
        assert chordal_peo(g.induced(rest_wide)) is not None, "wide remainder must be chordal"
        yield member


def chordalize(inst: Instance, k: int, l: int) -> Profile:
    """Force every list coloring of the boundary block (left cover plus
    trailing block); each member's remaining wide set induces a chordal
    graph, which is asserted on every member."""
    return Profile(Refinement(inst, member) for member in _chordalize_members(inst, k, l))


def _finalize_small_members(inst: Instance, k: int, l: int) -> Iterator[Instance]:
    wide = wide_set(inst)
    if len(wide) >= 3 * k + 3 * l + 6:
        raise PreconditionError("wide set is large enough for boundary padding")
    for f in enumerate_colorings(inst.sub_instance(wide), cap=max(len(wide), 1)):
        new_lists = dict(inst.lists.items())
        for v in wide:
            new_lists[v] = frozenset((f[v],))
        member = Instance(inst.graph, ListAssignment(new_lists))
        assert all(len(cs) <= 1 for _, cs in member.lists.items())
        yield member


def finalize_small(inst: Instance, k: int, l: int) -> Profile:
    """When the wide set is below the padding threshold, enumerate its list
    colorings outright; members have only forced or empty lists."""
    return Profile(
        Refinement(inst, member) for member in _finalize_small_members(inst, k, l)
    )


def solve_j16(
    inst: Instance,
    k: int,
    l: int,
    reverse: bool = False,
    check_freeness: bool = True,
) -> Optional[Coloring]:
    """Decision procedure with witness for instances free of the padded
    two-forward-edge pattern; `reverse` solves the mirrored family by
    running on the reversed graph (colorings ignore the ordering)."""
    if reverse:
        mirrored = Instance(inst.graph.reverse(), inst.lists)
        return solve_j16(mirrored, k, l, reverse=False, check_freeness=check_freeness)
    if check_freeness:
        witness = contains_pattern(inst.graph, build_pattern(f"J16:{k},{l}"))
        if witness is not None:
            raise RefusalError(f"J16:{k},{l}", witness)

    for member in _fwdnbr_special_members(inst, k, l):
        result = solve_two_lists(member)
        if result is not None:
            assert result.validates(inst)
            return result

    threshold = 3 * k + 3 * l + 6
    for member in _fwdnbr_members(inst, k, l):
        if len(wide_set(member)) >= threshold:
            stage = _chordalize_members(member, k, l)
        else:
            stage = _finalize_small_members(member, k, l)
        for refined in stage:
            final = propagate_singletons(refined)
            if any(not cs for _, cs in final.lists.items()):
                continue
            coloring = _finish_member(final)
            if coloring is not None:
                assert coloring.validates(inst)
                return coloring
    return None


def _finish_member(inst: Instance) -> Optional[Coloring]:
    """Solve the chordal wide part, then extend by the forced colors."""
    g = inst.graph
    wide = wide_set(inst)
    assignment = {}
    if wide:
        partial = solve_chordal(inst.sub_instance(wide))
        if partial is None:
            return None
        assignment.update(partial.items())
    for v in g.vertices:
        if v not in assignment:
            (c,) = inst.lists.get(v)
            assignment[v] = c
    coloring = Coloring(assignment)
    assert coloring.validates(inst)
    return coloring
