"""Acceptance suite.

One test per criterion, each printing a single PASS line (visible with
``pytest -s``) after its assertions; tolerances are pinned in the
assertions themselves.  Run with::

    pytest tests/test_acceptance.py -v -s
"""

import math
from itertools import combinations

import numpy as np
import pytest

import bttest as bt
from conftest import (
    all_triangles_balanced,
    dense_probs,
    oracle_unbalanced_count,
    perturbed_bt_instance,
    random_tree,
)


def _report(num, text):
    print(f"\n[criterion {num:02d}] PASS - {text}")


def test_criterion_01_sample_size_formula():
    # frozen ceil(ln 3 / -ln(1-eps)) values, and the 2/eps cap on a grid
    assert bt.sample_size(0.5, 1.0 / 3.0) == 2
    assert bt.sample_size(0.1, 1.0 / 3.0) == 11
    assert bt.sample_size(0.01, 1.0 / 3.0) == 110
    grid = np.linspace(0.005, 0.995, 100)
    for eps in grid:
        k = bt.sample_size(float(eps), 1.0 / 3.0)
        assert k == math.ceil(math.log(3.0) / -math.log1p(-float(eps)))
        assert k < 2.0 / eps
    _report(1, "sample sizes {2, 11, 110}; f(eps) < 2/eps on 100-point grid")


def test_criterion_02_one_sidedness():
    # 10^4 seeds per n; every verdict on an exact-model tournament accepts
    rejections = 0
    runs = 0
    for n in (5, 20, 100):
        score_rng = np.random.default_rng(1000 + n)
        tournaments = [
            bt.gen_bt(score_rng.uniform(0.1, 10.0, size=n)) for _ in range(10)
        ]
        for seed in range(10_000):
            t = tournaments[seed % 10]
            verdict = bt.test_bt(t, bt.TesterConfig(eps=0.1, seed=seed))
            runs += 1
            if not verdict.accepted:
                rejections += 1
    assert runs == 30_000
    assert rejections == 0
    _report(2, "0 rejections in 10^4 seeds at each n in {5, 20, 100}")


def _hub_instance_eps01():
    """n = 30 with exactly 406 = ceil(0.1 * C(30,3)) unbalanced triangles:
    hub 0 joined to 29 spokes with pairwise-distinct log odds; every
    triangle through the hub has a nonzero log-odds curl, nothing else does.
    """
    n = 30
    entries = []
    for x in range(n - 1):
        for y in range(x + 1, n):
            if x == 0:
                lo = 0.3 + 0.02 * y
                entries.append((x, y, 1.0 / (1.0 + math.exp(-lo))))
            else:
                entries.append((x, y, 0.5))
    return bt.new_tournament(n, entries)


def _group_instance_eps03():
    """n = 30 with exactly 1218 = ceil(0.3 * C(30,3)) unbalanced triangles:
    vertex groups of sizes (7, 6, 9, 8); group-0 vertices beat group-j
    vertices with log odds c_j, distinct across groups, all other pairs
    fair.  Unbalanced triangles are those meeting group 0 once and two
    distinct other groups: 7 * (6*9 + 6*8 + 9*8) = 1218.
    """
    n = 30
    group = np.repeat([0, 1, 2, 3], [7, 6, 9, 8])
    cs = {1: 0.4, 2: 0.8, 3: 1.2}
    entries = []
    for x in range(n - 1):
        for y in range(x + 1, n):
            if group[x] == 0 and group[y] != 0:
                p = 1.0 / (1.0 + math.exp(-cs[int(group[y])]))
            else:
                p = 0.5
            entries.append((x, y, p))
    return bt.new_tournament(n, entries)


def test_criterion_03_soundness_at_farness():
    total_triangles = math.comb(30, 3)
    cases = [
        (0.1, _hub_instance_eps01(), 406),
        (0.3, _group_instance_eps03(), 1218),
    ]
    rates = []
    for eps, t, expected_bad in cases:
        assert expected_bad == math.ceil(eps * total_triangles)
        assert oracle_unbalanced_count(t) == expected_bad
        f = bt.sample_size(eps, 1.0 / 3.0)
        rejects = 0
        for seed in range(10_000):
            if not bt.test_bt(t, bt.TesterConfig(eps=eps, seed=seed)).accepted:
                rejects += 1
        rate = rejects / 10_000
        rates.append(rate)
        assert rate >= 2.0 / 3.0 - 0.02
        assert rate >= 1.0 - (1.0 - eps) ** f - 0.02
    _report(
        3,
        f"reject rates {rates[0]:.4f} (eps=0.1), {rates[1]:.4f} (eps=0.3) "
        "on exact-count instances",
    )


def test_criterion_04_equivalence_suite():
    """All four characterisations agree on 200 exhaustively checked
    instances: every triangle balanced <=> root-0 triangles balanced <=>
    star-tree fundamental cycles balanced <=> root-0 scores give a
    reversible pair."""
    agreements = 0
    positives = 0
    rng = np.random.default_rng(42)
    for i in range(200):
        n = 4 + i % 5
        kind = i % 4
        if kind == 0:
            t = bt.gen_random(n, 5000 + i)
        elif kind == 1:
            t, _ = bt.repair(bt.gen_random(n, 6000 + i))
        elif kind == 2:
            t = bt.gen_bt(rng.uniform(0.2, 5.0, size=n))
        else:
            edges = random_tree(n, rng)
            weights = rng.uniform(0.1, 0.9, size=n - 1)
            t = bt.extend_tree(
                bt.TreeWeights(n, tuple((u, v, float(w)) for (u, v), w in zip(edges, weights)))
            )
        p1 = all(bt.is_balanced(t, tri) for tri in bt.enumerate_triangles(n))
        p2 = all(
            bt.is_balanced(t, tri)
            for tri in bt.enumerate_triangles(n)
            if 0 in tri.vertices()
        )
        p3 = bt.check_fundamental_cycles(t, [(0, v) for v in range(1, n)])
        pi = bt.scores_to_stationary(bt.scores_from_root(t, 0))
        p4 = bt.check_reversible(t, pi, 0.0)
        assert p1 == p2 == p3 == p4
        agreements += 1
        positives += p1
    assert agreements == 200
    assert 0 < positives < 200  # both outcomes exercised
    _report(4, f"200/200 agreement ({positives} reversible, {200 - positives} not)")


def test_criterion_05_repair_guarantee():
    for seed in range(100):
        t = bt.gen_random(10, 7000 + seed)
        td = bt.total_discrepancy(t)
        repaired, report = bt.repair(t)
        assert all_triangles_balanced(repaired, tol=1e-9)
        root_sum = float(td.per_root[report.root])
        assert report.total_change <= root_sum + 1e-9
        assert root_sum <= (3.0 / 10.0) * td.total + 1e-6
        assert td.per_root.sum() == pytest.approx(3.0 * td.total, abs=1e-6)
    _report(5, "100/100 repairs balanced within bounds; averaging identity holds")


def test_criterion_06_approximation_chain():
    eps = 0.1
    cap = (1.0 + eps) ** 3 - 1.0
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(100):
        t, _ = perturbed_bt_instance(8, eps, rng)
        eps_prime = 0.0
        for tri in bt.enumerate_triangles(8):
            if 0 in tri.vertices():
                lam = bt.triangle_ratio(t, tri)
                eps_prime = max(eps_prime, max(lam, 1.0 / lam) - 1.0)
        assert eps_prime <= cap * (1.0 + 1e-9)  # (a)
        worst = max(worst, eps_prime)
        eps_prime *= 1.0 + 1e-9
        scores = bt.scores_from_root(t, 0)
        assert bt.verify_approx_bt(t, scores, eps_prime)  # (b)
        pi = bt.scores_to_stationary(scores)
        assert bt.check_reversible(t, pi, 3.0 * eps_prime)  # (c)
        for tri in bt.enumerate_triangles(8):  # (d)
            assert bt.is_eps_balanced(t, tri, 7.0 * eps_prime)
    _report(6, f"chain (a)-(d) on 100 instances; worst eps' {worst:.4f} <= {cap:.4f}")


def test_criterion_07_spanning_tree_extension():
    rng = np.random.default_rng(11)
    for _ in range(100):
        edges = random_tree(8, rng)
        weighted = tuple(
            (u, v, float(w))
            for (u, v), w in zip(edges, rng.uniform(0.05, 0.95, size=7))
        )
        t = bt.extend_tree(bt.TreeWeights(8, weighted))
        assert all_triangles_balanced(t, tol=1e-9)
        for u, v, w in weighted:
            assert t.prob(u, v) == w  # bit-exact restriction
    _report(7, "100/100 extensions balanced, tree weights reproduced bit-exactly")


def test_criterion_08_cycle_space_multiplicativity():
    rng = np.random.default_rng(23)
    t = bt.gen_random(6, 99)
    tree = random_tree(6, rng)
    cycles = list(bt.fundamental_cycles(6, tree))
    p = dense_probs(t)
    ell = np.zeros((6, 6))
    for x in range(6):
        for y in range(6):
            if x != y:
                ell[x, y] = math.log(p[x, y] / p[y, x])
    checked = 0
    for c, d in combinations(cycles, 2):
        flow = np.zeros((6, 6))
        for u, v in c.edges():
            flow[u, v] += 1
        for u, v in d.edges():
            flow[u, v] += 1
        log_sum_cycle = float((flow * ell).sum())
        parts = bt.log_cycle_ratio(t, c) + bt.log_cycle_ratio(t, d)
        assert abs(log_sum_cycle - parts) <= 1e-8
        checked += 1
    assert checked == math.comb(len(cycles), 2)
    _report(8, f"log-ratio additivity on all {checked} fundamental-cycle pairs")


def test_criterion_09_fit_recovery_and_gradient():
    rng = np.random.default_rng(31)
    for n in (5, 20, 50):
        a = rng.uniform(0.2, 5.0, size=n)
        t = bt.gen_bt(a)
        fitted = bt.fit_scores_least_squares(t)
        np.testing.assert_allclose(fitted, a / a[0], rtol=1e-9)

    # central finite differences of the quadratic objective at the solution
    t = bt.gen_random(12, 4)
    phi = np.log(bt.fit_scores_least_squares(t))
    ell = {
        (x, y): math.log(t.prob(x, y) / t.prob(y, x))
        for x, y in combinations(range(12), 2)
    }

    def objective(v):
        return sum(
            (ell[(x, y)] - v[x] + v[y]) ** 2 for x, y in combinations(range(12), 2)
        )

    h = 1e-5
    grad_norm = 0.0
    for i in range(12):
        up, down = phi.copy(), phi.copy()
        up[i] += h
        down[i] -= h
        grad_norm = max(grad_norm, abs(objective(up) - objective(down)) / (2 * h))
    assert grad_norm <= 1e-8
    _report(9, f"scores recovered to 1e-9 up to n=50; |grad| = {grad_norm:.2e}")


def test_criterion_10_worked_numbers():
    t = bt.gen_cyclic(3, 0.9)
    tri = bt.Triangle(0, 1, 2)
    d = bt.discrepancy(t, tri)
    assert d.value == pytest.approx(0.9 - 0.01 / 0.82, abs=1e-9)
    lam = bt.triangle_ratio(t, tri)
    assert lam == pytest.approx(729.0, rel=1e-6)
    _report(10, f"disc = {d.value:.9f}, ratio = {lam:.6f}")
