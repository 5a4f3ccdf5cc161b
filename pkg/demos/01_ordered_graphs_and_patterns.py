#!/usr/bin/env python3
"""Tour of the ordered-graph data model: exact rational positions, induced
subgraphs, intervals, maximal edges, and order-preserving pattern search."""

from fractions import Fraction

from ordered_coloring import (
    NEG_INF,
    OrderedGraph,
    build_pattern,
    contains_pattern,
    is_isomorphic,
    monotone_subsequence,
)

# An ordered graph is a graph plus an injective rational position per vertex.
# Only the order of the positions matters; halves and thirds are fine.
g = OrderedGraph(
    [("a", 1), ("b", Fraction(3, 2)), ("c", 2), ("d", 4), ("e", 5)],
    [("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")],
)
print("vertices in position order:", g.vertices)
print("neighbors of d:", sorted(g.neighbors("d")))

# Intervals use the position line; the default bounds are half-open.
print("vertices in (1:4]:", sorted(g.interval(1, 4)))
print("vertices strictly left of 4:", sorted(g.interval(NEG_INF, 4, include_hi=False)))

# A maximal edge is not out-spanned on both sides by another edge.
# Their left endpoints increase, and so do their right endpoints.
print("maximal edges:", g.maximal_edges())
e = g.maximal_edges()[0]
und, lft = g.under_left(e)
print(f"span of {e}:", sorted(und), " left of it:", sorted(lft))

# Pattern containment is order-preserving and induced: the witness set
# induces exactly the pattern's edges, in the same vertex order.
j15 = build_pattern("J15")  # path 1-2-3 in position order
hit = contains_pattern(g, j15)
print("embedding of the in-order path:", sorted(map(str, hit)))

j9 = build_pattern("J9")  # two disjoint edges, one fully before the other
print("J9 embedding:", contains_pattern(g, j9))

# Reversal flips the position line; freeness is symmetric under it.
print("reverse is J9-free too:", contains_pattern(g.reverse(), j9.reverse()) is None)

# Patterns come from a small named catalog, with padding and reversal.
padded = build_pattern("J16:2,1")
print("J16 padded with 2+1 isolated vertices has", padded.n, "vertices")
print("reversal matches the mirrored catalog entry:",
      is_isomorphic(build_pattern("J16").reverse(), build_pattern("neg:J16")))

# Any 10 distinct numbers contain a monotone run of length 4.
seq = [3, 9, 1, 7, 2, 8, 5, 6, 0, 4]
idx = monotone_subsequence(seq, 3)
print("monotone subsequence:", [seq[i] for i in idx])
