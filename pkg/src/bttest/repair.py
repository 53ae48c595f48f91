"""Repair into an exactly reversible tournament, score construction and
fitting, spanning-tree extension, and a desk-scale distance oracle.

The repair fixes a root vertex r and rewrites each edge yz opposite r to
the unique weight that balances the triangle {r, y, z}; edges incident to
r are untouched.  Every triangle through r is then balanced, which already
certifies full reversibility, and each rewritten edge moves by at most the
discrepancy of its triangle.  Choosing the root that minimises the sum of
discrepancies over its triangles keeps the total movement below
``(3/n) * sum_T disc(T)`` by the averaging identity

    sum_r sum_{T owns r} disc(T)  ==  3 * sum_T disc(T).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .balance import (
    _disc_value,
    _tree_structure,
    enumerate_triangles,
    is_eps_balanced,
    total_discrepancy,
)
from .errors import (
    ClampWarning,
    DeskScaleExceededError,
    DimensionMismatchError,
    OutOfRangeProbabilityError,
    ParameterOutOfRangeError,
    PreconditionFailedError,
    TooFewVerticesError,
)
from .tournament import ETA, TAU, StochasticTournament, check_reversible, pair_index

#: Desk-scale ceiling for the exhaustive L1 distance oracle.
DESK_SCALE = 8


@dataclass(frozen=True)
class RepairReport:
    """What a repair did.

    ``edits`` lists the rewritten present edges as ``(x, y, old, new)``
    where x -> y is the edge's stored orientation.  Only edges opposite the
    root in some unbalanced triangle appear; nothing incident to the root
    is ever edited.  ``per_edge_bound_ok`` records that every edit stayed
    within the discrepancy of its triangle; ``clamped`` lists pairs whose
    balancing value fell outside [eta, 1 - eta] and was clamped.
    """

    root: int
    edits: tuple[tuple[int, int, float, float], ...]
    total_change: float
    per_edge_bound_ok: bool
    clamped: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TreeWeights:
    """A weighted, oriented spanning tree of the complete graph.

    ``edges`` holds ``(u, v, w)`` triples: the tree edge {u, v} is oriented
    u -> v and carries weight w in (0, 1).
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v), float(w)) for u, v, w in self.edges)
        _tree_structure(self.n, [(u, v) for u, v, _ in edges])  # validates
        for u, v, w in edges:
            if not 0.0 < w < 1.0:
                raise OutOfRangeProbabilityError(
                    f"tree weight {w} on ({u}, {v}) outside (0, 1)"
                )
        object.__setattr__(self, "edges", edges)


def repair_with_root(
    t: StochasticTournament, r: int, tol: float = TAU
) -> tuple[StochasticTournament, RepairReport]:
    """Rebalance every triangle through ``r`` by rewriting its opposite edge.

    For each pair {u, v} avoiding r whose triangle {r, u, v} is unbalanced
    (beyond ``tol`` on |log lambda|), the present edge u -> v gets the
    unique weight with odds ``(p_ur / p_ru) * (p_rv / p_vr)``, which
    balances the triangle exactly.  Triangles already balanced within
    ``tol`` are left alone, so repairing a reversible tournament is the
    identity with total_change 0.  Balancing values outside
    [eta, 1 - eta] are clamped and flagged.
    """
    t._check_vertex(r)
    new_weights = t.weights.copy()
    edits = []
    clamped = []
    bound_ok = True
    eta = t.eta
    for u, v, old in t.edges():
        if u == r or v == r:
            continue
        p_ur = t.prob(u, r)
        p_rv = t.prob(r, v)
        num = (1.0 - p_rv) * (1.0 - p_ur)  # p_vr * p_ru
        den = p_rv * p_ur
        # log lambda of triangle (u, v, r) traversed u -> v -> r -> u
        imbalance = math.log(old / (1.0 - old)) + math.log(num / den)
        if abs(imbalance) <= tol:
            continue
        new = den / (den + num)
        if new < eta:
            new = eta
            clamped.append((u, v))
        elif new > 1.0 - eta:
            new = 1.0 - eta
            clamped.append((u, v))
        new_weights[pair_index(t.n, min(u, v), max(u, v))] = new
        edits.append((u, v, old, new))
    repaired = StochasticTournament(t.n, new_weights, t.low_wins, eta)
    # every |edit| must stay within the discrepancy of its triangle
    p = t.prob_matrix()
    for u, v, old, new in edits:
        if abs(new - old) > _disc_value(p, u, v, r) + 1e-12:
            bound_ok = False
    total = math.fsum(abs(new - old) for _, _, old, new in edits)
    return repaired, RepairReport(
        root=r,
        edits=tuple(edits),
        total_change=total,
        per_edge_bound_ok=bound_ok,
        clamped=tuple(clamped),
    )


def best_root(t: StochasticTournament, tie_tol: float = TAU) -> int:
    """Vertex whose triangles carry the least total discrepancy.

    O(n^3).  Per-root sums within ``tie_tol`` of the minimum count as tied
    and the lowest id wins, so floating-point dust cannot perturb the
    choice on an already-reversible input.  The winning sum is at most
    ``(3/n) * sum_T disc(T)`` by the averaging identity.
    """
    if t.n < 3:
        raise TooFewVerticesError(f"best_root needs n >= 3, got n={t.n}")
    per_root = total_discrepancy(t).per_root
    cutoff = per_root.min() + tie_tol
    return int(np.argmax(per_root <= cutoff))


def repair(t: StochasticTournament) -> tuple[StochasticTournament, RepairReport]:
    """Repair at the best root.

    Output is reversible; ``total_change <= (3/n) * sum_T disc(T)`` (plus
    tie tolerance), so a tournament whose triangle discrepancies sum below
    ``eps * C(n, 3)`` moves by less than ``eps * C(n, 2)`` in total.
    """
    return repair_with_root(t, best_root(t))


def scores_from_root(t: StochasticTournament, r: int) -> np.ndarray:
    """Scores read off against a root: a(r) = 1, a(y) = p_yr / p_ry.

    If every triangle through r is balanced these satisfy the exact
    Bradley-Terry identity; if every triangle through r is eps-balanced
    they form an eps-approximate score vector.
    """
    t._check_vertex(r)
    a = np.empty(t.n)
    a[r] = 1.0
    for y in range(t.n):
        if y != r:
            p_yr = t.prob(y, r)
            a[y] = p_yr / (1.0 - p_yr)
    return a


def verify_approx_bt(
    t: StochasticTournament, scores: Sequence[float] | np.ndarray, eps: float
) -> bool:
    """Two-sided check that ``scores`` is an eps-approximate score vector:

        (1+eps)^-1 * a(x)/(a(x)+a(y))  <=  p_xy  <=  (1+eps) * a(x)/(a(x)+a(y))

    for all ordered pairs.  Scale-free in ``scores``.
    """
    a = np.asarray(scores, dtype=float)
    if a.shape != (t.n,):
        raise DimensionMismatchError(f"scores shape {a.shape}, expected ({t.n},)")
    if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
        raise ParameterOutOfRangeError("scores must be strictly positive and finite")
    if not 0.0 < eps <= 1.0:
        raise ParameterOutOfRangeError(f"eps must be in (0, 1], got {eps}")
    p = t.prob_matrix()
    pred = a[:, None] / (a[:, None] + a[None, :])
    np.fill_diagonal(pred, 1.0)
    np.fill_diagonal(p, 1.0)
    hi = 1.0 + eps
    return bool(np.all(p <= hi * pred) and np.all(p >= pred / hi))


def scores_to_stationary(scores: Sequence[float] | np.ndarray) -> np.ndarray:
    """Stationary distribution of a score vector: pi_x proportional to 1/a(x).

    If ``scores`` is an eps-approximate score vector for a tournament, the
    pair (tournament, pi) passes ``check_reversible`` at 3*eps.
    """
    a = np.asarray(scores, dtype=float)
    if not np.all(np.isfinite(a)) or np.any(a <= 0.0):
        raise ParameterOutOfRangeError("scores must be strictly positive and finite")
    inv = 1.0 / a
    return inv / inv.sum()


def check_seven_eps(
    t: StochasticTournament,
    pi: Sequence[float] | np.ndarray,
    eps: float,
) -> bool:
    """Given (t, pi) eps-approximately reversible, check that every triangle
    is 7*eps-balanced.

    The implication always holds (each triangle ratio is a product of three
    detailed-balance ratios, and (1+eps)^3 <= 1+7*eps for eps <= 1); it is
    exposed as a checkable property.  Raises PreconditionFailedError when
    (t, pi) does not pass ``check_reversible`` at ``eps`` in the first place.
    """
    if not check_reversible(t, pi, eps):
        raise PreconditionFailedError(
            f"(t, pi) is not {eps}-approximately reversible"
        )
    return all(
        is_eps_balanced(t, tri, 7.0 * eps) for tri in enumerate_triangles(t.n)
    )


def extend_tree(tw: TreeWeights, eta: float = ETA) -> StochasticTournament:
    """Extend spanning-tree weights to a reversible tournament.

    A stationary measure is grown along the tree from its lowest vertex
    (pi(root) = 1, pi(child) = pi(parent) * odds of the parent beating the
    child), then every chord gets the unique detailed-balance weight
    ``w / (1 - w) = pi(hi) / pi(lo)``.  Tree edges keep their input weight
    and orientation bit-for-bit.  Chord weights outside [eta, 1 - eta] are
    clamped with a ClampWarning.  The measure is accumulated in log space
    so long ratio chains cannot overflow.
    """
    n = tw.n
    parent, depth = _tree_structure(n, [(u, v) for u, v, _ in tw.edges])
    for u, v, w in tw.edges:
        if not (eta <= w <= 1.0 - eta):
            raise OutOfRangeProbabilityError(
                f"tree weight {w} on ({u}, {v}) outside [{eta}, {1.0 - eta}]"
            )

    # log odds of parent beating child, keyed by child
    edge_lo: dict[int, float] = {}
    for u, v, w in tw.edges:
        if parent[v] == u:  # stored direction is parent -> child
            edge_lo[v] = math.log(w / (1.0 - w))
        else:  # stored direction child -> parent: parent's odds invert
            edge_lo[u] = math.log((1.0 - w) / w)

    log_pi = np.zeros(n)
    for v in sorted(range(n), key=lambda v: depth[v]):
        if parent[v] >= 0:
            log_pi[v] = log_pi[parent[v]] + edge_lo[v]

    m = n * (n - 1) // 2
    weights = np.empty(m)
    low_wins = np.ones(m, dtype=bool)
    tree_pairs = {}
    for u, v, w in tw.edges:
        tree_pairs[(min(u, v), max(u, v))] = (u, v, w)
    clamped = 0
    i = 0
    for lo in range(n - 1):
        for hi in range(lo + 1, n):
            if (lo, hi) in tree_pairs:
                u, v, w = tree_pairs[(lo, hi)]
                weights[i] = w
                low_wins[i] = u < v
            else:
                delta = log_pi[hi] - log_pi[lo]
                w = 1.0 / (1.0 + math.exp(-delta))
                if w < eta:
                    w = eta
                    clamped += 1
                elif w > 1.0 - eta:
                    w = 1.0 - eta
                    clamped += 1
                weights[i] = w
            i += 1
    if clamped:
        warnings.warn(
            f"{clamped} chord weight(s) clamped into [{eta}, {1.0 - eta}]",
            ClampWarning,
            stacklevel=2,
        )
    return StochasticTournament(n, weights, low_wins, eta)


def fit_scores_least_squares(t: StochasticTournament) -> np.ndarray:
    """Scores whose log minimises the squared log-odds residual

        sum_{x<y} ( log(p_xy / p_yx) - (log a(x) - log a(y)) )^2 .

    On the complete graph the normal equations have the closed form
    ``log a(x) = mean over y of log(p_xy / p_yx)`` up to an additive
    constant; the result is normalised so a(0) = 1.  Exactly consistent
    inputs are recovered up to scale; otherwise this is the L2-optimal
    log-odds potential.
    """
    pm = t.prob_matrix()
    np.fill_diagonal(pm, 0.5)
    ell = np.log(pm / pm.T)
    phi = ell.sum(axis=1) / t.n
    return np.exp(phi - phi[0])


def min_verification_eps(
    t: StochasticTournament,
    scores: Sequence[float] | np.ndarray,
    resolution: float = 1e-6,
) -> float | None:
    """Smallest eps in (0, 1] at which ``verify_approx_bt`` passes, located
    by bisection to ``resolution``; None when even eps = 1 fails."""
    if not verify_approx_bt(t, scores, 1.0):
        return None
    lo, hi = 0.0, 1.0
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if verify_approx_bt(t, scores, mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class DistanceBounds:
    """Bracketing of the L1 distance to the nearest reversible weighting."""

    upper: float
    lower: float


def _l1_objective(p: np.ndarray, phi: np.ndarray) -> float:
    n = phi.size
    total = 0.0
    for x in range(n - 1):
        for y in range(x + 1, n):
            pred = 1.0 / (1.0 + math.exp(phi[y] - phi[x]))
            total += abs(p[x, y] - pred)
    return total


def l1_distance_oracle(
    t: StochasticTournament, budget: int = 200, tol: float = TAU
) -> DistanceBounds:
    """Bracket the L1 edit distance to the reversible property (n <= 8).

    Upper bound: the cheapest single-root repair, refined by coordinate
    descent on the log-score potential minimising the absolute deviation
    from the induced model (``budget`` single-coordinate line searches,
    started from the least-squares potential).  Lower bound: the largest,
    over unbalanced triangles, of the cheapest single-edge fix of that
    triangle, capped at the upper bound so the bracket is always ordered.
    Exactly reversible inputs report (0, 0).
    """
    if t.n > DESK_SCALE:
        raise DeskScaleExceededError(
            f"distance oracle is desk-scale only (n <= {DESK_SCALE}), got n={t.n}"
        )
    if budget < 0:
        raise ParameterOutOfRangeError(f"budget must be >= 0, got {budget}")

    upper = min(
        repair_with_root(t, r)[1].total_change for r in range(t.n)
    )

    p = t.prob_matrix()
    phi = np.log(fit_scores_least_squares(t))
    best = _l1_objective(p, phi)
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for i in range(1, t.n):  # phi[0] pinned: the objective is scale-free
            if steps >= budget:
                break

            def along(v, i=i):
                trial = phi.copy()
                trial[i] = v
                return _l1_objective(p, trial)

            res = minimize_scalar(
                along, bounds=(phi[i] - 30.0, phi[i] + 30.0), method="bounded"
            )
            steps += 1
            if res.fun < best - 1e-12:
                best = res.fun
                phi[i] = res.x
                improved = True
    upper = min(upper, best)

    lower = 0.0
    for tri in enumerate_triangles(t.n):
        x, y, z = tri.vertices()
        log_lam = math.log(p[x, y] / p[y, x])
        log_lam += math.log(p[y, z] / p[z, y])
        log_lam += math.log(p[z, x] / p[x, z])
        if abs(log_lam) > tol:
            p_xy, p_yz, p_zx = p[x, y], p[y, z], p[z, x]
            p_yx, p_zy, p_xz = 1.0 - p_xy, 1.0 - p_yz, 1.0 - p_zx
            alpha = p_xy - p_zy * p_xz / (p_zy * p_xz + p_yz * p_zx)
            beta = p_yz - p_yx * p_xz / (p_yx * p_xz + p_xy * p_zx)
            gamma = p_zx - p_yx * p_zy / (p_yx * p_zy + p_xy * p_yz)
            lower = max(lower, min(abs(alpha), abs(beta), abs(gamma)))
    return DistanceBounds(upper=upper, lower=min(lower, upper))
