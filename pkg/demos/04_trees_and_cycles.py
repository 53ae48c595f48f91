"""
Spanning trees and the cycle space
==================================

Any weighting of a spanning tree extends to a reversible tournament, and
balance only ever needs to be checked on a cycle basis: the log of the
cycle ratio is additive over cycle sums.
"""

import math

import numpy as np

import bttest as bt

# Weight a star: player 0 beats player 1 with 0.9 and player 2 with 0.5.
star = bt.TreeWeights(3, ((0, 1, 0.9), (0, 2, 0.5)))
t = bt.extend_tree(star)
print("chord p(1 beats 2) =", t.prob(1, 2))
print("tree weights kept:", t.prob(0, 1), t.prob(0, 2))
print("reversible:", bt.check_reversible(t, bt.scores_to_stationary(bt.scores_from_root(t, 0)), 0.0))

# A longer random tree at n = 8: the extension is reversible whatever the
# weights, and restriction to the tree reproduces them exactly.
rng = np.random.default_rng(4)
edges = [(0, 1), (1, 2), (1, 3), (3, 4), (0, 5), (5, 6), (6, 7)]
tw = bt.TreeWeights(
    8, tuple((u, v, float(w)) for (u, v), w in zip(edges, rng.uniform(0.2, 0.8, 7)))
)
ext = bt.extend_tree(tw)
print("\nall triangles balanced:",
      all(bt.is_balanced(ext, tr) for tr in bt.enumerate_triangles(8)))

# Fundamental cycles of a spanning tree form a cycle basis: checking them
# certifies everything.
print("fundamental cycles balanced:", bt.check_fundamental_cycles(ext, edges))
rps = bt.gen_cyclic(3, 0.9)
print("cyclic tournament fails the basis check:",
      bt.check_fundamental_cycles(rps, [(0, 1), (1, 2)]))

# log lambda is additive over cycle sums: two triangles sharing an edge in
# opposite directions combine into their symmetric-difference 4-cycle.
t5 = bt.gen_random(5, seed=11)
c = bt.DirectedCycle((0, 1, 2))
d = bt.DirectedCycle((1, 0, 3))
s = bt.DirectedCycle((1, 2, 0, 3))
lhs = bt.log_cycle_ratio(t5, c) + bt.log_cycle_ratio(t5, d)
rhs = bt.log_cycle_ratio(t5, s)
print(f"\nlog additivity: {lhs:.12f} == {rhs:.12f} "
      f"(diff {abs(lhs - rhs):.2e})")

# Longer cycles in an exact model telescope to ratio one.
model = bt.gen_bt(np.linspace(1, 3, 6))
loop = bt.DirectedCycle((0, 2, 4, 1, 5, 3))
print("6-cycle in a model: lambda =", bt.cycle_ratio(model, loop))
assert abs(math.log(bt.cycle_ratio(model, loop))) < 1e-12
