#!/usr/bin/env python3
"""The complexity map for a single forbidden ordered pattern: which
patterns leave list-3-coloring polynomial, which make it NP-complete, and
which are genuinely open."""

import itertools
from collections import Counter

from ordered_coloring import OrderedGraph, build_pattern, classify

# The named catalog first.
for name in ("J9", "J15", "J16", "M1", "M5", "M6", "M7", "M8"):
    v = classify(build_pattern(name))
    print(f"{name:>8}: {v.status:<12} ({v.justification})")

# Padding matters: the fork pattern stays polynomial under outer padding,
# but an isolated vertex wedged inside tips it over.
print()
print("J16 padded (2,1):", classify(build_pattern("J16:2,1")).status)
inner = OrderedGraph([(i, i) for i in range(1, 5)], [(1, 3), (1, 4)])
print("fork with an isolated vertex inside:", classify(inner).status)

# Sweep everything small and tally the verdict distribution.
tally = Counter()
open_shapes = []
for n in range(0, 7):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for m in range(0, 4):
        for edges in itertools.combinations(pairs, m):
            h = OrderedGraph([(i, i) for i in range(1, n + 1)], edges)
            v = classify(h)
            tally[v.status] += 1
            if v.status == "open" and len(open_shapes) < 5:
                open_shapes.append((n, edges, v.justification))

print()
print("verdicts over all patterns with <= 6 vertices and <= 3 edges:")
for status, count in sorted(tally.items()):
    print(f"  {status:<12} {count}")
print("a few open shapes:")
for n, edges, justification in open_shapes:
    print(f"  n={n} edges={edges} ({justification})")
