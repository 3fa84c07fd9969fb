"""
Consecutive probabilities and the order of events
=================================================

The probability that events E_1, ..., E_n all occur in that order is
||E_n ... E_1 psi||^2.  Three computations of it agree, and reversing the
order generally changes the answer.
"""

import numpy as np

from projprob import (
    Event,
    born,
    consecutive,
    consecutive_events,
    consecutive_via_bases,
    independence,
    random_unitary,
    state_point,
)
from projprob.random_objects import random_event, random_point

rng = np.random.default_rng(7)
d = 4
psi = random_point(d, rng)
e1, e2 = random_event(d, rng, rank=2), random_event(d, rng, rank=3)

# product of projectors applied to the state
a = consecutive(psi, [e1, e2])
# explicit sum over orthonormal bases of the two ranges (any bases work)
beta = e1.subspace.basis @ random_unitary(e1.rank, 1)
alpha = e2.subspace.basis @ random_unitary(e2.rank, 2)
b = consecutive_via_bases(psi, e1, e2, beta, alpha)
# the state itself as the first event of a chain of projections
c = consecutive_events([Event.ray(psi.vector), e1, e2])
print(f"three routes: {a:.15f} {b:.15f} {c:.15f}")

print(f"E1 then E2: {consecutive(psi, [e1, e2]):.6f}")
print(f"E2 then E1: {consecutive(psi, [e2, e1]):.6f}")

# an order-dependent notion of independence
e1_2d = state_point([1, 0])
plus = Event.ray([1, 1])
first = Event.ray([1, 0])
r = independence(e1_2d, plus, first)
print(f"(plus, e1): P(both) = {r.lhs:.3f}, product = {r.rhs:.3f}, independent: {r.independent}")
r = independence(e1_2d, first, plus)
print(f"(e1, plus): P(both) = {r.lhs:.3f}, product = {r.rhs:.3f}, independent: {r.independent}")
print("born(e1, plus) =", born(e1_2d, plus))
