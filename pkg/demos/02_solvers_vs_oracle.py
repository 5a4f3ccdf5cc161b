#!/usr/bin/env python3
"""The two polynomial solvers against the exhaustive oracle on seeded
random pattern-free instances, plus the shared kernels they stand on."""

from ordered_coloring import (
    Instance,
    ListAssignment,
    OrderedGraph,
    build_pattern,
    count_colorings,
    drop_singletons,
    propagate_singletons,
    solve_bruteforce,
    solve_chordal,
    solve_j16,
    solve_jw,
    solve_two_lists,
)
from ordered_coloring.rand import (
    make_rng,
    random_chordal_instance,
    random_j16free_instance,
    random_pattern_free_instance,
)

rng = make_rng(4242)

# --- kernels ---------------------------------------------------------------

# Singleton propagation: a forced vertex strips its color from neighbors,
# preserving the coloring set exactly.
g = OrderedGraph([("u", 1), ("v", 2), ("w", 3)], [("u", "v"), ("v", "w")])
inst = Instance(g, ListAssignment({"u": {1}, "v": {1, 2}, "w": {2, 3}}))
print("before:", {v: sorted(cs) for v, cs in sorted(inst.lists.items())})
after = propagate_singletons(inst)
print("after: ", {v: sorted(cs) for v, cs in sorted(after.lists.items())})
print("coloring count unchanged:", count_colorings(inst) == count_colorings(after))

# Dropping the forced vertices keeps colorability and records their colors.
ref = drop_singletons(inst)
print("kept vertices:", ref.sub.graph.vertices, " forced:", ref.forced)

# Lists of size two reduce to 2-SAT; an odd cycle on one pair is infeasible.
c5 = OrderedGraph([(i, i) for i in range(5)], [(i, (i + 1) % 5) for i in range(5)])
two = Instance(c5, ListAssignment({v: {1, 2} for v in c5.vertices}))
print("odd cycle on two colors:", solve_two_lists(two))

# Chordal instances get a perfect-elimination dynamic program.
chordal_inst = random_chordal_instance(rng, 10)
a = solve_chordal(chordal_inst)
b = solve_bruteforce(chordal_inst)
print("chordal solver agrees with oracle:", (a is None) == (b is None))

# --- the two headline solvers ----------------------------------------------

jw_pattern = build_pattern("Jw:1")
agreements = 0
for _ in range(40):
    inst = random_pattern_free_instance(rng, jw_pattern, rng.randint(3, 8), 0.6, 0.6)
    got = solve_jw(inst, 1)
    expected = solve_bruteforce(inst)
    assert (got is None) == (expected is None)
    agreements += 1
print(f"single-edge-pattern solver: {agreements}/40 verdicts match the oracle")

agreements = 0
for _ in range(40):
    inst = random_j16free_instance(rng, 1, 1, rng.randint(3, 10))
    got = solve_j16(inst, 1, 1)
    expected = solve_bruteforce(inst)
    assert (got is None) == (expected is None)
    if got is not None:
        assert got.validates(inst)
    agreements += 1
print(f"padded-fork-pattern solver: {agreements}/40 verdicts match the oracle")
