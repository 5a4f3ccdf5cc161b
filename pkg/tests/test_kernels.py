import itertools

import pytest

from ordered_coloring import (
    Instance,
    ListAssignment,
    PreconditionError,
    build_pattern,
    chordal_peo,
    contains_pattern,
    drop_singletons,
    enumerate_colorings,
    has_k4,
    is_j16_free_structurally,
    propagate_singletons,
    solve_bruteforce,
    solve_chordal,
    solve_few_wide,
    solve_small_class,
    solve_two_lists,
)
from ordered_coloring.rand import (
    make_rng,
    random_chordal_instance,
    random_instance,
    random_two_list_instance,
)
from conftest import graph, instance


def coloring_set(inst, cap=20):
    return {
        tuple(sorted((str(v), c) for v, c in col.items()))
        for col in enumerate_colorings(inst, cap=cap)
    }


class TestPropagateSingletons:
    def test_single_firing(self):
        inst = instance({"u": 1, "v": 2}, [("u", "v")], lists={"u": (1,), "v": (1, 2)})
        out = propagate_singletons(inst)
        assert out.lists.get("v") == {2}

    def test_wide_lists_untouched(self):
        inst = instance({"a": 1, "b": 2}, [("a", "b")])
        assert propagate_singletons(inst).lists == inst.lists

    def test_chained_firings(self):
        inst = instance(
            {"u": 1, "v": 2, "w": 3},
            [("u", "v"), ("v", "w")],
            lists={"u": (1,), "v": (1, 2), "w": (2, 3)},
        )
        out = propagate_singletons(inst)
        assert out.lists.get("v") == {2} and out.lists.get("w") == {3}
        assert coloring_set(inst) == coloring_set(out)

    def test_fixpoint_reached(self):
        rng = make_rng(31)
        for _ in range(60):
            inst = random_instance(rng, rng.randint(1, 8), rng.random(), rng.random())
            out = propagate_singletons(inst)
            for e in out.graph.edges:
                u, v = tuple(e)
                if len(out.lists.get(v)) == 1:
                    assert not (out.lists.get(u) & out.lists.get(v))
                if len(out.lists.get(u)) == 1:
                    assert not (out.lists.get(u) & out.lists.get(v))

    def test_preserves_coloring_set(self):
        rng = make_rng(32)
        for _ in range(60):
            inst = random_instance(rng, rng.randint(1, 8), rng.random(), rng.random())
            assert coloring_set(inst) == coloring_set(propagate_singletons(inst))


class TestDropSingletons:
    def test_identity_on_full_lists(self):
        inst = instance({"a": 1, "b": 2}, [("a", "b")])
        ref = drop_singletons(inst)
        assert ref.spanning and ref.sub == inst

    def test_forced_vertex_removed(self):
        inst = instance({"a": 1}, lists={"a": (2,)})
        ref = drop_singletons(inst)
        assert ref.sub.graph.n == 0 and ref.forced == {"a": 2}

    def test_no_singletons_remain_and_equicolorable(self):
        rng = make_rng(33)
        for _ in range(80):
            inst = random_instance(rng, rng.randint(1, 8), rng.random(), rng.random())
            ref = drop_singletons(inst)
            assert all(len(ref.sub.lists.get(v)) in (0, 2, 3) for v in ref.sub.graph.vertices)
            a = solve_bruteforce(inst) is not None
            b = solve_bruteforce(ref.sub) is not None
            assert a == b
            if b:
                extended = ref.extend(solve_bruteforce(ref.sub))
                assert extended.validates(inst)

    def test_triangle_cascade(self):
        inst = instance(
            {"u": 1, "v": 2, "w": 3},
            [("u", "v"), ("u", "w"), ("v", "w")],
            lists={"u": (1,), "v": (1, 2), "w": (1, 2, 3)},
        )
        ref = drop_singletons(inst)
        assert ref.sub.graph.n == 0
        assert ref.forced == {"u": 1, "v": 2, "w": 3}


class TestSolveTwoLists:
    def test_triangle_two_colors_fails(self, triangle):
        inst = Instance(triangle, ListAssignment({v: (1, 2) for v in triangle.vertices}))
        assert solve_two_lists(inst) is None

    def test_even_cycle_alternates(self):
        g = graph({i: i for i in range(1, 5)}, [(1, 2), (2, 3), (3, 4), (1, 4)])
        inst = Instance(g, ListAssignment({v: (1, 2) for v in g.vertices}))
        result = solve_two_lists(inst)
        assert result is not None and result.validates(inst)

    def test_full_list_rejected(self):
        with pytest.raises(PreconditionError):
            solve_two_lists(instance({"a": 1}))

    def test_matches_oracle(self):
        rng = make_rng(34)
        for _ in range(300):
            inst = random_two_list_instance(rng, rng.randint(0, 10), rng.random())
            got = solve_two_lists(inst)
            expected = solve_bruteforce(inst)
            assert (got is None) == (expected is None)
            if got is not None:
                assert got.validates(inst)


class TestSolveFewWide:
    def test_no_wide_equals_two_lists(self):
        rng = make_rng(35)
        for _ in range(40):
            inst = random_two_list_instance(rng, rng.randint(0, 8), rng.random())
            assert (solve_few_wide(inst, 0) is None) == (solve_two_lists(inst) is None)

    def test_forced_third_color(self):
        inst = instance(
            {"a": 1, "b": 2, "c": 3},
            [("a", "b"), ("b", "c")],
            lists={"a": (1,), "c": (2,), "b": (1, 2, 3)},
        )
        result = solve_few_wide(inst, 1)
        assert result is not None and result["b"] == 3

    def test_too_many_wide_rejected(self):
        inst = instance({"a": 1, "b": 2})
        with pytest.raises(PreconditionError):
            solve_few_wide(inst, 1)

    def test_matches_oracle(self):
        rng = make_rng(36)
        for _ in range(200):
            inst = random_instance(rng, rng.randint(0, 10), rng.random(), full_bias=0.25)
            wide = sum(1 for v in inst.graph.vertices if len(inst.lists.get(v)) == 3)
            if wide > 3:
                continue
            got = solve_few_wide(inst, 3)
            assert (got is None) == (solve_bruteforce(inst) is None)
            if got is not None:
                assert got.validates(inst)


class TestSolveSmallClass:
    def test_zero_bound_never_succeeds(self):
        assert solve_small_class(instance({"a": 1}), 0) is None

    def test_edgeless_single_color(self):
        inst = instance({i: i for i in range(1, 4)}, lists={i: (1,) for i in range(1, 4)})
        result = solve_small_class(inst, 4)
        assert result is not None
        assert all(result[v] == 1 for v in inst.graph.vertices)

    def test_matches_filtered_oracle(self):
        rng = make_rng(37)
        for _ in range(150):
            inst = random_instance(rng, rng.randint(0, 8), rng.random(), rng.random())
            for c in (1, 2, 3):
                got = solve_small_class(inst, c)
                expected = any(
                    min(len(col.color_class(i)) for i in (1, 2, 3)) < c
                    for col in enumerate_colorings(inst)
                )
                assert (got is not None) == expected
                if got is not None:
                    assert got.validates(inst)
                    assert min(len(got.color_class(i)) for i in (1, 2, 3)) < c


class TestHasK4:
    def test_k4_detected(self, k4):
        assert has_k4(k4)

    def test_triangle_free(self):
        g = graph({i: i for i in range(1, 5)}, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert not has_k4(g)

    def test_matches_bruteforce(self):
        rng = make_rng(38)
        for _ in range(120):
            g = random_instance(rng, rng.randint(0, 9), rng.random()).graph
            expected = any(
                all(g.has_edge(a, b) for a, b in itertools.combinations(combo, 2))
                for combo in itertools.combinations(g.vertices, 4)
            )
            assert has_k4(g) == expected


def has_long_induced_cycle(g):
    """Brute scan for an induced cycle of length at least four."""
    vs = list(g.vertices)
    for size in range(4, g.n + 1):
        for combo in itertools.combinations(vs, size):
            sub = g.induced(combo)
            if all(len(sub.neighbors(v)) == 2 for v in combo) and _connected(sub):
                return True
    return False


def _connected(g):
    vs = list(g.vertices)
    if not vs:
        return True
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        for u in g.neighbors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(vs)


class TestChordal:
    def test_tree_is_chordal(self):
        g = graph({i: i for i in range(1, 6)}, [(1, 2), (1, 3), (3, 4), (3, 5)])
        peo = chordal_peo(g)
        assert peo is not None and peo.verify(g)

    def test_c4_is_not(self):
        g = graph({i: i for i in range(1, 5)}, [(1, 2), (2, 3), (3, 4), (1, 4)])
        assert chordal_peo(g) is None

    def test_matches_cycle_scan(self):
        rng = make_rng(39)
        for _ in range(80):
            g = random_instance(rng, rng.randint(0, 9), rng.random()).graph
            assert (chordal_peo(g) is None) == has_long_induced_cycle(g)

    def test_structural_freeness_equals_pattern_freeness(self):
        rng = make_rng(40)
        j16 = build_pattern("J16")
        for _ in range(120):
            g = random_instance(rng, rng.randint(0, 8), rng.random()).graph
            assert is_j16_free_structurally(g) == (contains_pattern(g, j16) is None)

    def test_peo_forward_clique_property(self):
        rng = make_rng(41)
        for _ in range(60):
            inst = random_chordal_instance(rng, rng.randint(1, 10))
            peo = chordal_peo(inst.graph)
            assert peo is not None and peo.verify(inst.graph)


class TestSolveChordal:
    def test_triangle(self, triangle):
        result = solve_chordal(Instance.with_full_lists(triangle))
        assert result is not None

    def test_k4_rejected_as_uncolorable(self, k4):
        assert solve_chordal(Instance.with_full_lists(k4)) is None

    def test_nonchordal_precondition(self):
        g = graph({i: i for i in range(1, 5)}, [(1, 2), (2, 3), (3, 4), (1, 4)])
        with pytest.raises(PreconditionError):
            solve_chordal(Instance.with_full_lists(g))

    def test_matches_oracle_on_random_chordal(self):
        rng = make_rng(42)
        for _ in range(250):
            inst = random_chordal_instance(rng, rng.randint(0, 12), rng.random())
            got = solve_chordal(inst)
            assert (got is None) == (solve_bruteforce(inst) is None)
            if got is not None:
                assert got.validates(inst)
