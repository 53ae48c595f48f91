"""
Stochastic tournaments and their Markov chains
==============================================

Build tournaments from explicit match probabilities or from player scores,
inspect the associated Markov chain, and check reversibility.
"""

import numpy as np

import bttest as bt

# A tournament where each of three players beats the next with 90%.
# No score assignment can reproduce it: if a(0) > a(1) > a(2) then player 0
# cannot lose to player 2 most of the time.
rps = bt.gen_cyclic(3, 0.9)
print("p(0 beats 1) =", rps.prob(0, 1))
print("p(1 beats 0) =", rps.prob(1, 0))

# The complement is computed, never stored, so this is an exact identity:
print("complement:", rps.prob(0, 1) + rps.prob(1, 0) == 1.0)

# A tournament generated from scores (1, 2, 4): p_xy = a(x) / (a(x) + a(y)).
model = bt.gen_bt([1.0, 2.0, 4.0])
print("\nmodel p(0 beats 1) =", model.prob(0, 1))  # 1/3
print("model p(0 beats 2) =", model.prob(0, 2))  # 1/5

# Every tournament defines a Markov chain: move from x to y with
# probability p_xy / n, staying put with the leftover mass.
q = bt.markov_matrix(model)
print("\ntransition matrix:\n", q)
print("row sums:", q.sum(axis=1))

# The chain of a score-generated tournament is reversible, with stationary
# distribution proportional to the inverse scores ...
pi = bt.scores_to_stationary([1.0, 2.0, 4.0])
print("\npi =", pi)
print("detailed balance holds:", bt.check_reversible(model, pi, 0.0))

# ... while no distribution fixes the cyclic tournament.
print("cyclic with uniform pi:", bt.check_reversible(rps, np.ones(3) / 3, 0.0))

# Perturbed and fully random tournaments are seeded and reproducible.
noisy = bt.gen_perturbed(model, 0.05, seed=7)
print("\nnoisy == rebuilt:", noisy == bt.gen_perturbed(model, 0.05, seed=7))
print("random tournament weights:", bt.gen_random(4, seed=1).weights)
