"""Constant-query randomized tester for the Bradley-Terry / reversibility
property.

The tester samples triangles independently and uniformly at random and
accepts iff every sampled triangle is balanced.  It is one-sided: a
tournament whose triangles are all balanced is accepted with probability 1.
A tournament that is eps-far (in total L1 weight change) from every
reversible weighting has at least an eps fraction of unbalanced triangles,
so each sample catches one with probability >= eps and the sample size

    f(eps, delta) = ceil( ln(1/delta) / -ln(1 - eps) )

drives the false-accept probability below delta.  The query count is at
most 3 edges per sampled triangle, independent of the tournament size; the
probability matrix is never materialised.

Randomness comes from numpy's PCG64 generator (``numpy.random.default_rng``),
which is seedable and deterministic across platforms; reports should carry
:data:`RNG_ALGORITHM` alongside the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .balance import Triangle, is_balanced, is_eps_balanced
from .errors import ParameterOutOfRangeError, TooFewVerticesError
from .tournament import TAU, StochasticTournament

#: Identifier of the generator behind every seeded operation.
RNG_ALGORITHM = "numpy-pcg64"

_FY_LOWS = np.arange(3)


@dataclass(frozen=True)
class TesterConfig:
    """Knobs of one tester run.

    ``eps`` is the farness parameter, ``delta`` the allowed probability of
    accepting a far input (1/3 gives the classical 2/3 success bound),
    ``tol`` the balance tolerance on |log lambda|, and ``seed`` the RNG
    seed.  Setting ``eps_balance`` switches the per-triangle predicate from
    exact balance to the multiplicative eps-balanced form.
    """

    eps: float
    delta: float = 1.0 / 3.0
    tol: float = TAU
    seed: int = 0
    eps_balance: float | None = None

    def __post_init__(self):
        if not 0.0 < self.eps < 1.0:
            raise ParameterOutOfRangeError(f"eps must be in (0, 1), got {self.eps}")
        if not 0.0 < self.delta < 1.0:
            raise ParameterOutOfRangeError(
                f"delta must be in (0, 1), got {self.delta}"
            )
        if self.tol < 0.0:
            raise ParameterOutOfRangeError(f"tol must be >= 0, got {self.tol}")
        if self.eps_balance is not None and self.eps_balance <= 0.0:
            raise ParameterOutOfRangeError(
                f"eps_balance must be > 0, got {self.eps_balance}"
            )


@dataclass(frozen=True)
class TestVerdict:
    """Outcome of a tester run.

    ``witness`` is present iff the run rejected; it is an unbalanced
    triangle of the input, re-checkable by the caller.  ``samples_used``
    counts the triangles actually examined (the run stops at the first
    failure), never more than the requested sample size.
    """

    accepted: bool
    witness: Triangle | None
    samples_used: int

    @property
    def outcome(self) -> str:
        return "accept" if self.accepted else "reject"


def sample_size(eps: float, delta: float = 1.0 / 3.0) -> int:
    """Number of triangle samples needed: ceil(ln(1/delta) / -ln(1-eps)).

    Satisfies (1-eps)^result <= delta.  At delta = 1/3 the result stays
    below 2/eps for every eps in (0, 1).
    """
    if not 0.0 < eps < 1.0:
        raise ParameterOutOfRangeError(f"eps must be in (0, 1), got {eps}")
    if not 0.0 < delta < 1.0:
        raise ParameterOutOfRangeError(f"delta must be in (0, 1), got {delta}")
    return math.ceil(math.log(1.0 / delta) / -math.log1p(-eps))


def sample_triangle(rng: np.random.Generator, n: int) -> Triangle:
    """One triangle uniform over all C(n, 3), via partial Fisher-Yates.

    Three draws from a virtual index array give a uniformly random ordered
    triple of distinct vertices in O(1) space; dropping the order makes the
    unordered triple exactly uniform.
    """
    draws = rng.integers(_FY_LOWS, n)
    return Triangle(*_fisher_yates_triple(draws))


def _fisher_yates_triple(draws) -> list[int]:
    swapped: dict[int, int] = {}
    chosen = []
    for i in range(3):
        j = int(draws[i])
        vi = swapped.get(i, i)
        vj = swapped.get(j, j)
        swapped[j] = vi
        swapped[i] = vj
        chosen.append(vj)
    return chosen


def test_bt(t: StochasticTournament, cfg: TesterConfig) -> TestVerdict:
    """Accept iff every sampled triangle is balanced.

    Draws ``sample_size(cfg.eps, cfg.delta)`` triangles i.i.d. uniformly
    (with replacement), checking each with ``is_balanced`` at ``cfg.tol``
    (or ``is_eps_balanced`` when ``cfg.eps_balance`` is set).  Rejects with
    the first unbalanced triangle as witness; deterministic given the seed.
    Touches at most 3 edges per examined triangle.
    """
    if t.n < 3:
        raise TooFewVerticesError(f"tester needs n >= 3, got n={t.n}")
    k = sample_size(cfg.eps, cfg.delta)
    rng = np.random.default_rng(cfg.seed)
    draws = rng.integers(np.tile(_FY_LOWS, k), t.n)
    for i in range(k):
        tri = Triangle(*_fisher_yates_triple(draws[3 * i : 3 * i + 3]))
        if cfg.eps_balance is not None:
            ok = is_eps_balanced(t, tri, cfg.eps_balance)
        else:
            ok = is_balanced(t, tri, cfg.tol)
        if not ok:
            return TestVerdict(False, tri, i + 1)
    return TestVerdict(True, None, k)


def estimate_unbalanced_fraction(
    t: StochasticTournament, samples: int, seed: int, tol: float = TAU
) -> float:
    """Fraction of ``samples`` uniform triangles that are unbalanced.

    Unbiased estimator of |B| / C(n, 3) where B is the set of unbalanced
    triangles; purely diagnostic.
    """
    if t.n < 3:
        raise TooFewVerticesError(f"need n >= 3, got n={t.n}")
    if samples < 1:
        raise ParameterOutOfRangeError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    draws = rng.integers(np.tile(_FY_LOWS, samples), t.n)
    bad = 0
    for i in range(samples):
        tri = Triangle(*_fisher_yates_triple(draws[3 * i : 3 * i + 3]))
        if not is_balanced(t, tri, tol):
            bad += 1
    return bad / samples
