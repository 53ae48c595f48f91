"""Balance of triangles and cycles, and the discrepancy of a triangle.

A triangle on vertices x < y < z (canonical orientation x -> y -> z -> x)
is *balanced* when

    p_xy * p_yz * p_zx  ==  p_yx * p_zy * p_xz,

equivalently when its ratio ``lambda`` is 1.  The balance predicate is
evaluated on ``|log lambda| <= tol`` rather than on cross-multiplied
products: the condition is multiplicative, so a log-scale tolerance is
invariant under rescaling of the odds.

The *discrepancy* of a triangle is the largest of the three single-edge
weight changes that each individually make the triangle balanced; its
components alpha, beta, gamma are the signed changes for the edges xy, yz,
zx of the canonical orientation.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    DegenerateCycleError,
    NotASpanningTreeError,
    ParameterOutOfRangeError,
    SelfLoopError,
)
from .tournament import TAU, StochasticTournament


@dataclass(frozen=True)
class Triangle:
    """Three distinct vertices, stored sorted (x < y < z)."""

    x: int
    y: int
    z: int

    def __post_init__(self):
        a, b, c = sorted((self.x, self.y, self.z))
        if a == b or b == c:
            raise SelfLoopError(f"triangle vertices must be distinct: {self}")
        object.__setattr__(self, "x", a)
        object.__setattr__(self, "y", b)
        object.__setattr__(self, "z", c)

    def vertices(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class DirectedCycle:
    """A cyclically traversed sequence of >= 3 distinct vertices."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise DegenerateCycleError(
                f"cycle needs >= 3 distinct vertices, got {vs}"
            )
        object.__setattr__(self, "vertices", vs)

    def reversed(self) -> "DirectedCycle":
        return DirectedCycle(tuple(reversed(self.vertices)))

    def edges(self) -> Iterator[tuple[int, int]]:
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]


@dataclass(frozen=True)
class Discrepancy:
    """Signed single-edge repair amounts for a triangle.

    ``alpha``, ``beta``, ``gamma`` are the changes to subtract from p_xy,
    p_yz, p_zx respectively (canonical orientation); each one alone
    rebalances the triangle.  ``value`` is the largest magnitude.
    """

    alpha: float
    beta: float
    gamma: float

    @property
    def value(self) -> float:
        return max(abs(self.alpha), abs(self.beta), abs(self.gamma))


def log_triangle_ratio(t: StochasticTournament, tri: Triangle) -> float:
    """log of the balance ratio; exactly 3 edge queries."""
    total = 0.0
    for u, v in ((tri.x, tri.y), (tri.y, tri.z), (tri.z, tri.x)):
        p = t.prob(u, v)
        total += math.log(p / (1.0 - p))
    return total


def triangle_ratio(t: StochasticTournament, tri: Triangle) -> float:
    """Balance ratio lambda = (p_xy p_yz p_zx) / (p_yx p_zy p_xz) for the
    canonical orientation x -> y -> z -> x.  Reversing the orientation
    inverts the ratio."""
    ratio = 1.0
    for u, v in ((tri.x, tri.y), (tri.y, tri.z), (tri.z, tri.x)):
        p = t.prob(u, v)
        ratio *= p / (1.0 - p)
    return ratio


def is_balanced(t: StochasticTournament, tri: Triangle, tol: float = TAU) -> bool:
    """True when |log lambda| <= tol.  Orientation-invariant."""
    return abs(log_triangle_ratio(t, tri)) <= tol


def is_eps_balanced(t: StochasticTournament, tri: Triangle, eps: float) -> bool:
    """True when (1+eps)^-1 <= lambda <= 1+eps.

    The interval is closed under inversion, so the predicate does not
    depend on the orientation.  ``eps`` may exceed 1 (needed when checking
    7-eps balance for larger eps).
    """
    if eps <= 0.0:
        raise ParameterOutOfRangeError(f"eps must be > 0, got {eps}")
    lam = triangle_ratio(t, tri)
    hi = 1.0 + eps
    return 1.0 / hi <= lam <= hi


def discrepancy(t: StochasticTournament, tri: Triangle) -> Discrepancy:
    """Single-edge repair amounts of the triangle (canonical orientation).

    alpha = p_xy - p_zy p_xz / (p_zy p_xz + p_yz p_zx), and cyclically for
    beta (edge yz) and gamma (edge zx).  Subtracting a component from its
    edge rebalances the triangle exactly; ``value`` is in [0, 1] and is 0
    (within tolerance) iff the triangle is balanced.
    """
    x, y, z = tri.vertices()
    p_xy = t.prob(x, y)
    p_yz = t.prob(y, z)
    p_zx = t.prob(z, x)
    p_yx = 1.0 - p_xy
    p_zy = 1.0 - p_yz
    p_xz = 1.0 - p_zx
    alpha = p_xy - p_zy * p_xz / (p_zy * p_xz + p_yz * p_zx)
    beta = p_yz - p_yx * p_xz / (p_yx * p_xz + p_xy * p_zx)
    gamma = p_zx - p_yx * p_zy / (p_yx * p_zy + p_xy * p_yz)
    return Discrepancy(alpha, beta, gamma)


def enumerate_triangles(n: int) -> Iterator[Triangle]:
    """All C(n, 3) triangles in lexicographic order."""
    for x, y, z in combinations(range(n), 3):
        yield Triangle(x, y, z)


class _Kahan:
    """Compensated accumulator; O(n^3) discrepancy sums lose precision
    with naive addition."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, v: float):
        y = v - self.c
        u = self.s + y
        self.c = (u - self.s) - y
        self.s = u


@dataclass(frozen=True)
class TotalDiscrepancy:
    """Sum of disc(T) over all triangles, plus per-root sums over the
    triangles containing each vertex.  Each triangle has 3 vertices, so
    ``per_root.sum() == 3 * total`` up to accumulated rounding."""

    total: float
    per_root: np.ndarray


def _disc_value(p: np.ndarray, x: int, y: int, z: int) -> float:
    p_xy = p[x, y]
    p_yz = p[y, z]
    p_zx = p[z, x]
    p_yx = 1.0 - p_xy
    p_zy = 1.0 - p_yz
    p_xz = 1.0 - p_zx
    alpha = p_xy - p_zy * p_xz / (p_zy * p_xz + p_yz * p_zx)
    beta = p_yz - p_yx * p_xz / (p_yx * p_xz + p_xy * p_zx)
    gamma = p_zx - p_yx * p_zy / (p_yx * p_zy + p_xy * p_yz)
    return max(abs(alpha), abs(beta), abs(gamma))


def total_discrepancy(t: StochasticTournament, threads: int = 1) -> TotalDiscrepancy:
    """Exhaustive O(n^3) discrepancy sums, lexicographic triangle order.

    With ``threads > 1`` the triangle list is split into fixed contiguous
    chunks summed independently and combined in chunk order, so the result
    does not depend on scheduling.
    """
    p = t.prob_matrix()
    triangles = list(combinations(range(t.n), 3))

    def chunk_sums(chunk):
        total = _Kahan()
        per_root = [_Kahan() for _ in range(t.n)]
        for x, y, z in chunk:
            d = _disc_value(p, x, y, z)
            total.add(d)
            per_root[x].add(d)
            per_root[y].add(d)
            per_root[z].add(d)
        return total.s, np.array([k.s for k in per_root])

    if threads <= 1 or len(triangles) < 2 * threads:
        total, per_root = chunk_sums(triangles)
        return TotalDiscrepancy(total, per_root)

    bounds = np.linspace(0, len(triangles), threads + 1, dtype=int)
    chunks = [triangles[bounds[i]:bounds[i + 1]] for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(chunk_sums, chunks))
    total = _Kahan()
    per_root = np.zeros(t.n)
    for sub_total, sub_roots in results:  # fixed chunk order -> deterministic
        total.add(sub_total)
        per_root += sub_roots
    return TotalDiscrepancy(total.s, per_root)


def log_cycle_ratio(t: StochasticTournament, cycle: DirectedCycle) -> float:
    """log lambda of a directed cycle: sum of edge log-odds along it."""
    total = 0.0
    for u, v in cycle.edges():
        p = t.prob(u, v)
        total += math.log(p / (1.0 - p))
    return total


def cycle_ratio(t: StochasticTournament, cycle: DirectedCycle) -> float:
    """lambda of a directed cycle; multiplicative over cycle sums."""
    return math.exp(log_cycle_ratio(t, cycle))


def is_cycle_balanced(
    t: StochasticTournament, cycle: DirectedCycle, tol: float = TAU
) -> bool:
    return abs(log_cycle_ratio(t, cycle)) <= tol


# -- spanning trees and fundamental cycles --------------------------------


def _tree_structure(n: int, tree_edges) -> tuple[np.ndarray, np.ndarray]:
    """Parent/depth arrays of the tree rooted at its lowest vertex.

    Raises NotASpanningTreeError unless the edges form a spanning tree of
    the complete graph on [0, n).
    """
    edges = [(min(u, v), max(u, v)) for u, v in tree_edges]
    if len(edges) != n - 1 or len(set(edges)) != len(edges):
        raise NotASpanningTreeError(
            f"expected {n - 1} distinct edges, got {len(edges)}"
        )
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise NotASpanningTreeError(f"bad tree edge ({u}, {v})")
        adj[u].append(v)
        adj[v].append(u)
    parent = np.full(n, -1, dtype=int)
    depth = np.full(n, -1, dtype=int)
    depth[0] = 0
    stack = [0]
    seen = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if depth[v] < 0:
                parent[v] = u
                depth[v] = depth[u] + 1
                seen += 1
                stack.append(v)
    if seen != n:
        raise NotASpanningTreeError("tree does not reach every vertex")
    return parent, depth


def _tree_path(parent, depth, a: int, b: int) -> list[int]:
    """Unique tree path from a to b, inclusive, by walking both ends to
    their meeting point."""
    left, right = [a], [b]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(int(parent[left[-1]]))
    while depth[right[-1]] > depth[left[-1]]:
        right.append(int(parent[right[-1]]))
    while left[-1] != right[-1]:
        left.append(int(parent[left[-1]]))
        right.append(int(parent[right[-1]]))
    return left + right[-2::-1]


def fundamental_cycles(
    n: int, tree_edges: Iterable[tuple[int, int]]
) -> Iterator[DirectedCycle]:
    """Fundamental cycle of every chord of the tree, chords in
    pair-lexicographic order.  Each cycle runs chord u -> v, then back
    along the tree path from v to u."""
    parent, depth = _tree_structure(n, tree_edges)
    tree = {(min(u, v), max(u, v)) for u, v in tree_edges}
    for u, v in combinations(range(n), 2):
        if (u, v) in tree:
            continue
        path = _tree_path(parent, depth, v, u)  # v .. u through the tree
        yield DirectedCycle((u, *path[:-1]))


def check_fundamental_cycles(
    t: StochasticTournament,
    tree_edges: Iterable[tuple[int, int]],
    tol: float = TAU,
) -> bool:
    """True iff every fundamental cycle of the spanning tree is balanced.

    The fundamental cycles form a basis of the cycle space and log lambda
    is additive over cycle sums, so a True answer certifies that every
    cycle (in particular every triangle) is balanced.
    """
    tree_edges = list(tree_edges)
    return all(
        is_cycle_balanced(t, c, tol) for c in fundamental_cycles(t.n, tree_edges)
    )
